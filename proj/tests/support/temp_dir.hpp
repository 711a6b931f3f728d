/*
 * Copyright 2026 The Trellis Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef TRELLIS_TESTS_TEMP_DIR_HPP
#define TRELLIS_TESTS_TEMP_DIR_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>

namespace trellis::testing {

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    static std::atomic<unsigned> counter{0};
    path = std::filesystem::temp_directory_path() /
           ("trellis-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
  std::string sub(const std::string& name) const {
    return (path / name).string();
  }
  std::string write_file(const std::string& name, const std::string& content) const {
    std::string p = sub(name);
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
};

}  // namespace trellis::testing

#endif  // TRELLIS_TESTS_TEMP_DIR_HPP
