#include "ramsey/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace ramsey {

std::size_t resolve_threads(std::size_t threads) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    return threads;
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min(resolve_threads(threads), std::max<std::size_t>(count, 1));
    std::vector<std::exception_ptr> errors(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t i = next.fetch_add(1); i < count;
                         i = next.fetch_add(1)) {
                        try {
                            body(i);
                        } catch (...) {
                            errors[i] = std::current_exception();
                        }
                    }
                });
            }
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace ramsey
