/*
 * Copyright 2026 The ALOS Guidance Authors
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

#ifndef ALOS_ERROR_HPP_
#define ALOS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace alos {

/// Library-wide absolute tolerance for geometric identities.
inline constexpr double kDefaultTolerance = 1e-9;

enum class ErrorCode {
  kDomain,               // non-finite input
  kChartSingularity,     // |theta| too close to pi/2
  kDegenerateCourse,     // zero horizontal speed, course undefined
  kZeroSpeed,
  kNumeric,              // asin/acos argument genuinely out of range
  kArctangentDomain,     // u = 0 in the single-quadrant body-velocity model
  kVerticalCrabUndefined,
  kRelationSingularity,  // cos(beta_c) = 0 in the alpha_c* relation
  kDegenerateSegment,
  kPathFrameSingularity,
  kInvalidParameter,
  kCommandSaturation,    // pitch command clipped for too long
  kNoFit,
  kConfig,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace alos

#endif  // ALOS_ERROR_HPP_
