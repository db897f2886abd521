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

#include "alos/amplitude_phase.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "support/random_states.hpp"

namespace alos {
namespace {

constexpr double kPi = std::numbers::pi;

// Body velocity whose NED velocity has speed U, course chi and flight-path gamma.
BodyVelocity body_for(const EulerAngles& att, double U, double chi, double gamma) {
  const NedVector vn = U * NedVector(std::cos(gamma) * std::cos(chi),
                                     std::cos(gamma) * std::sin(chi), -std::sin(gamma));
  return BodyVelocity::from(rotation_body_to_ned(att).transpose() * vn);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kDomain;
}

TEST(SphericalCrab, AlignedAndWrap) {
  const EulerAngles att(0.0, 0.2, 0.7);
  SphericalVelocity sv{1.0, std::cos(0.2), 0.7, 0.2};
  const CrabAngles a = spherical_crab_from_angles(att, sv);
  EXPECT_NEAR(a.alpha_c, 0.0, 1e-15);
  EXPECT_NEAR(a.beta_c, 0.0, 1e-15);

  const CrabAngles b = spherical_crab_from_angles({0, 0, 3.0}, {1, 1, -3.0, 0});
  EXPECT_NEAR(b.beta_c, 2 * kPi - 6.0, 1e-12);
  EXPECT_NEAR(b.beta_c, 0.2832, 1e-4);
}

TEST(SphericalCrab, ThroughNedVelocity) {
  const EulerAngles att(0.1, 0.2, 0.5);
  const BodyVelocity vb{2.0, 0.5, 0.3};
  const NedVector vn = rotation_body_to_ned(att) * vb.vector();
  const double chi = std::atan2(vn.y(), vn.x());
  const double gamma = std::asin(-vn.z() / vn.norm());
  const CrabAngles ca = spherical_crab_from_angles(att, spherical_velocity(vn));
  EXPECT_NEAR(ca.beta_c, chi - 0.5, 1e-12);
  EXPECT_NEAR(ca.alpha_c, 0.2 - gamma, 1e-12);
  const CrabAngles cb = spherical_crab_from_body(att, vb);
  EXPECT_NEAR(cb.beta_c, ca.beta_c, 1e-12);
  EXPECT_NEAR(cb.alpha_c, ca.alpha_c, 1e-12);
  EXPECT_NEAR(cb.speed_horizontal, ca.speed_horizontal, 1e-12);
  EXPECT_NEAR(cb.speed_total, ca.speed_total, 1e-12);
}

TEST(SphericalCrab, PureSurgeAndPlanarCrab) {
  testing::StateSampler s;
  for (int i = 0; i < 100; ++i) {
    const CrabAngles ca = spherical_crab_from_body(s.attitude(), {1.3, 0, 0});
    EXPECT_NEAR(ca.alpha_c, 0.0, 1e-12);
    EXPECT_NEAR(ca.beta_c, 0.0, 1e-12);
  }
  const CrabAngles p = spherical_crab_from_body({0, 0, 0}, {1, 1, 0});
  EXPECT_NEAR(p.beta_c, kPi / 4, 1e-15);
  EXPECT_NEAR(p.alpha_c, 0.0, 1e-15);
}

TEST(SphericalCrab, Errors) {
  EXPECT_EQ(code_of([] { spherical_crab_from_body({0, 0, 0}, {0, 0, 0}); }), ErrorCode::kZeroSpeed);
  EXPECT_EQ(code_of([] { spherical_crab_from_body({0, 0, 0}, {0, 0, 1}); }),
            ErrorCode::kDegenerateCourse);
  EXPECT_EQ(code_of([] { spherical_crab_from_angles({0, 0, 0}, {1, 0, 0, kPi / 2}); }),
            ErrorCode::kDegenerateCourse);
}

TEST(BodyCrab, Examples) {
  const BodyCrabAngles a = body_crab_angles({0, 0, 0}, {1.7, 0, 0});
  EXPECT_DOUBLE_EQ(a.alpha_c_star, 0.0);
  EXPECT_DOUBLE_EQ(a.beta_c_star, 0.0);
  EXPECT_DOUBLE_EQ(a.speed_vertical_plane, 1.7);
  EXPECT_DOUBLE_EQ(a.speed_horizontal_star, 1.7);

  const BodyCrabAngles b = body_crab_angles({0, 0, 0}, {1, 0, 1});
  EXPECT_NEAR(b.alpha_c_star, kPi / 4, 1e-15);
  EXPECT_NEAR(b.speed_vertical_plane, std::sqrt(2.0), 1e-15);
}

TEST(BodyCrab, LiteralEvaluation) {
  const double phi = 0.1, theta = 0.2, u = 2.0, v = 0.5, w = 0.3;
  const double a = std::atan((v * std::sin(phi) + w * std::cos(phi)) / u);
  const double uv = std::sqrt(u * u + std::pow(v * std::sin(phi) + w * std::cos(phi), 2));
  const double lat = v * std::cos(phi) - w * std::sin(phi);
  const double b = std::atan(lat / (uv * std::cos(theta - a)));
  const double uh = std::sqrt(std::pow(uv * std::cos(theta - a), 2) + lat * lat);
  const BodyCrabAngles got = body_crab_angles({phi, theta, 0.5}, {u, v, w});
  EXPECT_NEAR(got.alpha_c_star, a, 1e-15);
  EXPECT_NEAR(got.beta_c_star, b, 1e-15);
  EXPECT_NEAR(got.speed_vertical_plane, uv, 1e-15);
  EXPECT_NEAR(got.speed_horizontal_star, uh, 1e-15);
}

TEST(BodyCrab, Errors) {
  EXPECT_EQ(code_of([] { body_crab_angles({0, 0, 0}, {0, 1, 0}); }),
            ErrorCode::kVerticalCrabUndefined);
  EXPECT_EQ(code_of([] { body_crab_angles({0, 0, 0}, {0, 0, 1}); }), ErrorCode::kArctangentDomain);
}

TEST(AlphaStarRelation, Examples) {
  CrabAngles ca;
  ca.alpha_c = 0.13;
  ca.beta_c = 0.0;
  EXPECT_NEAR(alpha_star_from_spherical(ca, 0.4), 0.13, 1e-15);
  ca.beta_c = 0.7;
  EXPECT_NEAR(alpha_star_from_spherical(ca, 0.0), 0.13, 1e-15);
  ca.beta_c = kPi / 2;
  EXPECT_EQ(code_of([&] { alpha_star_from_spherical(ca, 0.1); }), ErrorCode::kRelationSingularity);
}

TEST(AlphaStarRelation, ConstructedBodyVelocity) {
  const double beta = 0.4, gamma = 0.2, alpha = 0.1;
  const EulerAngles att(0.0, alpha + gamma, 0.0);
  const BodyVelocity vb = body_for(att, 1.0, beta, gamma);
  const double eq9 = std::atan((vb.v * std::sin(att.phi) + vb.w * std::cos(att.phi)) / vb.u);
  CrabAngles ca;
  ca.alpha_c = alpha;
  ca.beta_c = beta;
  EXPECT_NEAR(alpha_star_from_spherical(ca, gamma), eq9, 1e-12);
  EXPECT_GT(std::abs(eq9 - alpha), 1e-3);
}

TEST(ApVelocity, Examples) {
  const NedVector a = spherical_ap_velocity({0, 0, 0}, {0, 0, 1.2, 1.2});
  EXPECT_NEAR((a - NedVector(1.2, 0, 0)).norm(), 0.0, 1e-15);
  const EulerAngles att(0, 0.3, 1.0);
  const NedVector b = spherical_ap_velocity(att, {0.1, kPi / 2 - 1.0, 2.0, 1.5});
  EXPECT_NEAR(b.x(), 0.0, 1e-15);
  EXPECT_NEAR(b.y(), 1.5, 1e-15);
  EXPECT_NEAR(b.z(), -2.0 * std::sin(0.2), 1e-15);

  const double psi = 0.8;
  const EulerAngles level(0, 0, psi);
  const NedVector c = body_ap_velocity(level, body_crab_angles(level, {1.4, 0, 0}));
  EXPECT_NEAR((c - NedVector(1.4 * std::cos(psi), 1.4 * std::sin(psi), 0)).norm(), 0.0, 1e-15);
  const NedVector d = body_ap_velocity({0, 0, 0}, body_crab_angles({0, 0, 0}, {1, 0, 1}));
  EXPECT_NEAR((d - NedVector(1, 0, 1)).norm(), 0.0, 1e-15);
}

TEST(Equivalence, RandomStates) {
  testing::StateSampler s;
  for (int i = 0; i < 20000; ++i) {
    const auto st = s.valid_state();
    const NedVector vn = rotation_body_to_ned(st.attitude) * st.velocity.vector();
    const CrabAngles ca = spherical_crab_from_body(st.attitude, st.velocity);
    const BodyCrabAngles bca = body_crab_angles(st.attitude, st.velocity);
    ASSERT_LT(std::abs(ssa(ca.beta_c - bca.beta_c_star)), 1e-9);
    ASSERT_LT(std::abs(ca.speed_horizontal - bca.speed_horizontal_star), 1e-9);
    const double gamma = st.attitude.theta - ca.alpha_c;
    ASSERT_LT(std::abs(bca.alpha_c_star - alpha_star_from_spherical(ca, gamma)), 1e-9);
    ASSERT_LT((spherical_ap_velocity(st.attitude, ca) - vn).cwiseAbs().maxCoeff(), 1e-9);
    ASSERT_LT((body_ap_velocity(st.attitude, bca) - vn).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Equivalence, ProofIdentities) {
  testing::StateSampler s;
  for (int i = 0; i < 20000; ++i) {
    const auto st = s.any_state();
    const double phi = st.attitude.phi, th = st.attitude.theta;
    const auto& [u, v, w] = st.velocity;
    const NedVector vn = ned_velocity(st.attitude, st.velocity);
    if (vn.head<2>().norm() < 1e-6) continue;
    const CrabAngles ca = spherical_crab_from_body(st.attitude, st.velocity);
    const double lhs1 = u * std::cos(th) + (v * std::sin(phi) + w * std::cos(phi)) * std::sin(th);
    const double lhs2 = v * std::cos(phi) - w * std::sin(phi);
    ASSERT_NEAR(lhs1, ca.speed_horizontal * std::cos(ca.beta_c), 1e-12);
    ASSERT_NEAR(lhs2, ca.speed_horizontal * std::sin(ca.beta_c), 1e-12);
  }
}

TEST(Equivalence, UnstarredHorizontalSpeedReadingFails) {
  testing::StateSampler s;
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const auto st = s.valid_state();
    const CrabAngles ca = spherical_crab_from_body(st.attitude, st.velocity);
    const BodyCrabAngles bca = body_crab_angles(st.attitude, st.velocity);
    const double phi = st.attitude.phi;
    const double lat = st.velocity.v * std::cos(phi) - st.velocity.w * std::sin(phi);
    const double unstarred = std::hypot(
        bca.speed_vertical_plane * std::cos(st.attitude.theta - ca.alpha_c), lat);
    worst = std::max(worst, std::abs(unstarred - ca.speed_horizontal));
  }
  EXPECT_GT(worst, 1e-2);
}

TEST(Singularity, SphericalContinuousWhileStarredPathJumps) {
  const double gamma = -0.3;
  const EulerAngles att(0.0, 0.3, 0.0);
  double prev_alpha = 0.0, prev_star = 0.0;
  double max_alpha_step = 0.0, max_star_step = 0.0;
  bool first = true;
  for (int k = 0; k <= 400; ++k) {
    const double chi = kPi / 2 - 0.2 + 0.4 * k / 400.0 + 1e-7;
    const BodyVelocity vb = body_for(att, 1.0, chi, gamma);
    const CrabAngles ca = spherical_crab_from_body(att, vb);
    const double star = alpha_star_from_spherical(ca, gamma);
    if (!first) {
      max_alpha_step = std::max(max_alpha_step, std::abs(ca.alpha_c - prev_alpha));
      max_star_step = std::max(max_star_step, std::abs(star - prev_star));
    }
    prev_alpha = ca.alpha_c;
    prev_star = star;
    first = false;
  }
  EXPECT_LT(max_alpha_step, 1e-9);
  EXPECT_GT(max_star_step, 3.0);

  CrabAngles at;
  at.alpha_c = 0.6;
  at.beta_c = kPi / 2;
  EXPECT_EQ(code_of([&] { alpha_star_from_spherical(at, gamma); }),
            ErrorCode::kRelationSingularity);
}

}  // namespace
}  // namespace alos
