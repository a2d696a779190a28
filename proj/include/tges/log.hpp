#pragma once

#include <functional>
#include <iostream>
#include <mutex>
#include <string>

namespace tges {

using WarningHandler = std::function<void(const std::string&)>;

namespace detail {
inline WarningHandler& warning_handler() {
    static WarningHandler handler = [](const std::string& msg) { std::cerr << "tges: warning: " << msg << '\n'; };
    return handler;
}
inline std::mutex& warning_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace detail

/// Replaces the sink for warnings; returns the previous one.
inline WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard lock(detail::warning_mutex());
    return std::exchange(detail::warning_handler(), std::move(handler));
}

inline void warn(const std::string& msg) {
    std::lock_guard lock(detail::warning_mutex());
    if (detail::warning_handler()) detail::warning_handler()(msg);
}

}  // namespace tges
