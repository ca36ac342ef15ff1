#pragma once

#include <exception>

namespace demazure {

// Runs body(k) for k in [0, n) in parallel and rethrows the first failure.
template <class F>
void parallel_for(int n, F body) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n; ++k) {
        try {
            body(k);
        } catch (...) {
#pragma omp critical(demazure_parallel_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace demazure
