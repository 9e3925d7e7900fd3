// Copyright 2026 The ftqs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FTQS_COMMON_PARALLEL_H
#define FTQS_COMMON_PARALLEL_H

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ftqs {

/// Runs body(i) for i in [0, count) on up to `threads` workers. Work is
/// handed out in small blocks from a shared counter. The body must only
/// write to per-index storage.
template <typename Body>
void parallel_for(size_t count, int threads, Body &&body) {
    if (threads <= 1 || count < 2) {
        for (size_t i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    const size_t block = std::max<size_t>(1, count / (size_t(threads) * 16));
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        while (true) {
            size_t start = next.fetch_add(block);
            if (start >= count) {
                return;
            }
            size_t end = std::min(count, start + block);
            try {
                for (size_t i = start; i < end; i++) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(count);
                return;
            }
        }
    };
    size_t n = std::min<size_t>(size_t(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (size_t t = 0; t < n; t++) {
        pool.emplace_back(worker);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace ftqs

#endif
