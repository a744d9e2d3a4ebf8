#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace robin {

// Selects the OpenMP kernel or its serial reference. Both produce bitwise
// identical results; the serial path exists for testing and benchmarking.
enum class Exec { serial, parallel };

namespace detail {

// Runs body(i) for i in [0, n). Exceptions thrown by body are collected and
// the one with the lowest index is rethrown after the loop.
template <typename Body>
void for_each_index(Exec exec, std::size_t n, Body&& body)
{
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < count; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    } else {
        for (long long i = 0; i < count; ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail
}  // namespace robin
