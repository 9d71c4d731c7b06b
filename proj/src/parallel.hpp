#pragma once

#include <exception>
#include <mutex>

namespace hlab::detail {

// Exceptions may not leave an OpenMP region; keep the first and rethrow after it.
class ErrorSlot {
public:
    template <class F>
    void run(F&& f) noexcept {
        if (failed_) return;
        try {
            f();
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu_);
            if (!err_) err_ = std::current_exception();
            failed_ = true;
        }
    }
    void rethrow() const {
        if (err_) std::rethrow_exception(err_);
    }

private:
    std::mutex mu_;
    std::exception_ptr err_;
    volatile bool failed_ = false;
};

}  // namespace hlab::detail
