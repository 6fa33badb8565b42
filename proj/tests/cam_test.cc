/* Copyright 2026 The cam-forge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <cmath>
#include <limits>
#include <random>

#include "camforge/cam.h"
#include "camforge/error.h"
#include "doctest.h"
#include "oracles.h"

namespace camforge {
namespace {

Cam Make(int h, int w, std::vector<double> v) { return Cam(h, w, std::move(v)); }

void CheckValues(const Cam& c, const std::vector<double>& want) {
  REQUIRE(c.grid().size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    CHECK(c.grid()[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kIoError;
}

Cam RandomCam(std::mt19937_64& gen, int h, int w) {
  return Cam(h, w, oracle::UnitValues(gen, static_cast<std::size_t>(h) * w));
}

TEST_CASE("NormalizeCam divides by the maximum") {
  CheckValues(NormalizeCam(RawMap(2, 2, {2, 4, 0, 1})), {0.5, 1.0, 0.0, 0.25});
  CheckValues(NormalizeCam(RawMap(2, 2, {0, 0, 0, 0})), {0, 0, 0, 0});
  CheckValues(NormalizeCam(RawMap(2, 2, {0, 1, 0.3, 0.7})), {0, 1, 0.3, 0.7});
}

TEST_CASE("map construction rejects bad values") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(CodeOf([&] { RawMap(1, 2, {0.0, nan}); }) ==
        ErrorCode::kNonFiniteInput);
  CHECK(CodeOf([&] { RawMap(1, 1, {inf}); }) == ErrorCode::kNonFiniteInput);
  CHECK(CodeOf([] { RawMap(0, 0, {}); }) == ErrorCode::kEmptyMap);
  CHECK(CodeOf([] { Cam(1, 1, {1.5}); }) == ErrorCode::kInvalidValue);
  CHECK(CodeOf([] { RawMap(1, 1, {-0.1}); }) == ErrorCode::kInvalidValue);
}

TEST_CASE("FuseOr examples") {
  CheckValues(FuseOr(Make(2, 2, {1, 0, 0, 0}), Make(2, 2, {0, 1, 0, 0})),
              {1, 1, 0, 0});
  CheckValues(FuseOr(Cam::Zeros(2, 2), Cam::Zeros(2, 2)), {0, 0, 0, 0});
  CheckValues(FuseOr(Make(2, 2, {0.5, 0.2, 0.0, 1.0}),
                     Make(2, 2, {0.5, 0.8, 0.4, 0.0})),
              {0.75, 0.84, 0.4, 1.0});
}

TEST_CASE("FuseAnd examples") {
  CheckValues(FuseAnd(Make(1, 2, {1, 0}), Make(1, 2, {0, 1})), {0, 0});
  const Cam c = Make(2, 2, {0.5, 1.0, 0, 0});
  CheckValues(FuseAnd(c, c), {0.25, 1.0, 0, 0});
  CheckValues(FuseAnd(Make(2, 2, {0.5, 0.2, 0.0, 1.0}),
                      Make(2, 2, {0.5, 0.8, 0.4, 0.0})),
              {1.0, 0.64, 0, 0});
}

TEST_CASE("FuseAverage examples") {
  const Cam c = Make(2, 2, {0.1, 1.0, 0.3, 0.7});
  CheckValues(FuseAverage(c, c), {0.1, 1.0, 0.3, 0.7});
  CheckValues(FuseAverage(Make(1, 2, {1, 0}), Make(1, 2, {0, 1})), {1, 1});
  CheckValues(FuseAverage(Cam::Zeros(2, 2), Cam::Zeros(2, 2)), {0, 0, 0, 0});
}

TEST_CASE("fusion rejects mismatched shapes") {
  for (FusionMode m : {FusionMode::kOr, FusionMode::kAnd, FusionMode::kAverage}) {
    CHECK(CodeOf([&] { Fuse(Cam::Zeros(2, 2), Cam::Zeros(2, 3), m); }) ==
          ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("fusion matches the scalar oracle and is commutative") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> side(1, 16);
  const std::pair<FusionMode, oracle::Op> modes[] = {
      {FusionMode::kOr, oracle::Op::kOr},
      {FusionMode::kAnd, oracle::Op::kAnd},
      {FusionMode::kAverage, oracle::Op::kAvg}};
  for (int trial = 0; trial < 300; ++trial) {
    const int h = side(gen), w = side(gen);
    const Cam a = RandomCam(gen, h, w);
    const Cam b = RandomCam(gen, h, w);
    const std::vector<double> av(a.grid().values().begin(),
                                 a.grid().values().end());
    const std::vector<double> bv(b.grid().values().begin(),
                                 b.grid().values().end());
    for (const auto& [mode, op] : modes) {
      const Cam got = Fuse(a, b, mode);
      const auto want = oracle::Fuse(av, bv, op);
      for (std::size_t i = 0; i < want.size(); ++i) {
        REQUIRE(std::abs(got.grid()[i] - want[i]) <= 1e-6);
      }
      REQUIRE(got == Fuse(b, a, mode));
      REQUIRE(got.max() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("unnormalized ordering and monotonicity") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> bump(0.0, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const Cam a = RandomCam(gen, 6, 5);
    const Cam b = RandomCam(gen, 6, 5);
    const RawMap orr = ProbabilisticOrRaw(a, b);
    const RawMap andr = ProbabilisticAndRaw(a, b);
    for (int y = 0; y < 6; ++y) {
      for (int x = 0; x < 5; ++x) {
        const double lo = std::min(a.at(y, x), b.at(y, x));
        const double hi = std::max(a.at(y, x), b.at(y, x));
        REQUIRE(andr.at(y, x) <= lo);
        REQUIRE(lo <= hi);
        REQUIRE(hi <= orr.at(y, x));
      }
    }
    // Raise one pixel of a.
    std::vector<double> raised(a.grid().values().begin(),
                               a.grid().values().end());
    raised[7] = std::min(1.0, raised[7] + bump(gen));
    const Cam a2(6, 5, raised);
    REQUIRE(ProbabilisticOrRaw(a2, b).grid()[7] >= orr.grid()[7]);
    REQUIRE(ProbabilisticAndRaw(a2, b).grid()[7] >= andr.grid()[7]);
  }
}

TEST_CASE("StackFuse applies the scalar op per class") {
  std::mt19937_64 gen(3);
  CamStack s1("img", 4, 4), s2("img", 4, 4);
  s1.Insert(2, RandomCam(gen, 4, 4));
  s2.Insert(2, RandomCam(gen, 4, 4));
  s1.Insert(5, RandomCam(gen, 4, 4));
  s2.Insert(5, Cam::Zeros(4, 4));
  const CamStack orr = StackFuse(s1, s2, FusionMode::kOr);
  CHECK(orr.at(2) == FuseOr(s1.at(2), s2.at(2)));
  CHECK(orr.at(5) == FuseOr(s1.at(5), s2.at(5)));
  CHECK(StackFuse(s1, s2, FusionMode::kAnd).at(5) == Cam::Zeros(4, 4));

  CamStack other("img", 4, 4);
  other.Insert(2, Cam::Zeros(4, 4));
  CHECK(CodeOf([&] { StackFuse(s1, other, FusionMode::kOr); }) ==
        ErrorCode::kClassSetMismatch);
  CamStack renamed("other", 4, 4);
  renamed.Insert(2, Cam::Zeros(4, 4));
  renamed.Insert(5, Cam::Zeros(4, 4));
  CHECK(CodeOf([&] { StackFuse(s1, renamed, FusionMode::kOr); }) ==
        ErrorCode::kClassSetMismatch);
  CamStack small("img", 2, 2);
  small.Insert(2, Cam::Zeros(2, 2));
  small.Insert(5, Cam::Zeros(2, 2));
  CHECK(CodeOf([&] { StackFuse(s1, small, FusionMode::kOr); }) ==
        ErrorCode::kDimensionMismatch);
}

TEST_CASE("CamStack insertion checks") {
  CamStack s("x", 2, 2);
  s.Insert(1, Cam::Zeros(2, 2));
  CHECK(CodeOf([&] { s.Insert(1, Cam::Zeros(2, 2)); }) ==
        ErrorCode::kClassSetMismatch);
  CHECK(CodeOf([&] { s.Insert(2, Cam::Zeros(3, 2)); }) ==
        ErrorCode::kDimensionMismatch);
  CHECK(CodeOf([&] { s.Insert(0, Cam::Zeros(2, 2)); }) ==
        ErrorCode::kLabelOutOfRange);
  CHECK(CodeOf([&] { s.Insert(255, Cam::Zeros(2, 2)); }) ==
        ErrorCode::kLabelOutOfRange);
}

TEST_CASE("ToPseudoMask thresholds against background") {
  CamStack s("x", 2, 2);
  s.Insert(1, Make(2, 2, {0.9, 0.1, 0.3, 0.0}));
  const PseudoMask m = ToPseudoMask(s, 0.25);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 0);
  CHECK(m.at(1, 0) == 1);
  CHECK(m.at(1, 1) == 0);

  CamStack zeros("z", 2, 2);
  zeros.Insert(3, Cam::Zeros(2, 2));
  CHECK(ToPseudoMask(zeros) == PseudoMask(2, 2));

  CamStack tie("t", 1, 1);
  tie.Insert(5, Make(1, 1, {0.8}));
  tie.Insert(2, Make(1, 1, {0.8}));
  CHECK(ToPseudoMask(tie).at(0, 0) == 2);

  CamStack exact("e", 1, 1);
  exact.Insert(4, Make(1, 1, {0.25}));
  CHECK(ToPseudoMask(exact, 0.25).at(0, 0) == 0);

  CHECK(CodeOf([] { ToPseudoMask(CamStack("e", 1, 1)); }) ==
        ErrorCode::kEmptyStack);
  CHECK(CodeOf([&] { ToPseudoMask(s, 0.0); }) == ErrorCode::kInvalidValue);
}

TEST_CASE("ToPseudoMask emits only background and stack classes") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    CamStack s("r", 5, 5);
    s.Insert(3, RandomCam(gen, 5, 5));
    s.Insert(9, RandomCam(gen, 5, 5));
    for (std::uint8_t v : ToPseudoMask(s).present_labels()) {
      REQUIRE((v == 0 || v == 3 || v == 9));
    }
  }
}

TEST_CASE("ParseFusionMode") {
  CHECK(ParseFusionMode("or") == FusionMode::kOr);
  CHECK(ParseFusionMode("and") == FusionMode::kAnd);
  CHECK(ParseFusionMode("avg") == FusionMode::kAverage);
  CHECK(CodeOf([] { ParseFusionMode("xor"); }) == ErrorCode::kConfigError);
}

}  // namespace
}  // namespace camforge
