#include "pfqed/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace pfqed {

namespace {

std::atomic<int> g_max_threads{static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))};

} // namespace

int max_threads()
{
    return g_max_threads.load();
}

void set_max_threads(int n)
{
    g_max_threads.store(std::max(1, n));
}

void configure_threads_from_env()
{
    if (char const* env = std::getenv("PFL_THREADS")) {
        try {
            set_max_threads(std::stoi(env));
        } catch (std::exception const&) {
            // malformed value: keep the default
        }
    }
}

void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body)
{
    std::size_t const nt = std::min<std::size_t>(static_cast<std::size_t>(max_threads()), n);
    if (nt <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        std::size_t const begin = n * t / nt;
        std::size_t const end = n * (t + 1) / nt;
        workers.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

} // namespace pfqed
