/* Copyright 2026 The qwell Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qwell {

namespace {

std::atomic<std::size_t> g_override{0};

std::size_t env_thread_limit() {
  static const std::size_t limit = [] {
    const char* env = std::getenv("QWELL_THREADS");
    if (env != nullptr && *env != '\0') {
      try {
        const long v = std::stol(env);
        return v <= 1 ? std::size_t{1} : static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        return std::size_t{1};
      }
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }();
  return limit;
}

}  // namespace

std::size_t thread_limit() {
  const std::size_t forced = g_override.load();
  return forced != 0 ? forced : env_thread_limit();
}

void set_thread_limit(std::size_t threads) { g_override.store(threads); }

void for_each_chunk(std::size_t n_chunks,
                    const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(thread_limit(), n_chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](std::size_t id) {
    try {
      for (std::size_t c = next++; c < n_chunks; c = next++) fn(c);
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work, t);
  work(0);
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace qwell
