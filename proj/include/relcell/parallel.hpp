#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace relcell {

enum class Exec { Serial, Parallel };

// Runs f(i) for i in [0,n). Under Exec::Parallel the loop is an OpenMP
// worksharing loop; the first exception thrown by any iteration is rethrown.
template <class F>
void for_each_index(std::size_t n, Exec ex, F&& f) {
    if (ex == Exec::Serial) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
    const long long N = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < N; ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

int max_threads();

}  // namespace relcell
