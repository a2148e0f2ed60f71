#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "lact/errors.hpp"
#include "lact/phantom.hpp"

using namespace lact;

TEST_CASE("shepp-logan center pixel carries the stacked ellipse value") {
  const Image img = make_phantom(PhantomKind::SheppLogan, 128);
  // 1.0 (outer) - 0.49 (inner drop) + 0.05 + 0.05 + 0.1 of the small lesions
  // that cover the center, halved into [0, 1]: the analytic sum is 0.51.
  CHECK(img.at(64, 64) == doctest::Approx(0.51).epsilon(1e-12));
}

TEST_CASE("phantoms stay inside normalized units") {
  for (const auto kind : {PhantomKind::SheppLogan, PhantomKind::EllipseCardiac}) {
    const Image img = make_phantom(kind, 96, 3);
    const auto [lo, hi] = std::minmax_element(img.data.begin(), img.data.end());
    CAPTURE(static_cast<int>(kind));
    CHECK(*lo >= 0.0);
    CHECK(*hi <= 1.0);
    CHECK(*hi > 0.0);
  }
}

TEST_CASE("phantom construction is deterministic") {
  const Image a = make_phantom(PhantomKind::EllipseCardiac, 64, 9);
  const Image b = make_phantom(PhantomKind::EllipseCardiac, 64, 9);
  CHECK(a.data == b.data);
}

TEST_CASE("the seed moves cardiac phantoms but not shepp-logan") {
  const Image sl0 = make_phantom(PhantomKind::SheppLogan, 64, 0);
  const Image sl5 = make_phantom(PhantomKind::SheppLogan, 64, 5);
  CHECK(sl0.data == sl5.data);

  const Image c1 = make_phantom(PhantomKind::EllipseCardiac, 64, 1);
  const Image c2 = make_phantom(PhantomKind::EllipseCardiac, 64, 2);
  CHECK(c1.data != c2.data);
}

TEST_CASE("cardiac phantoms have bright structure over several levels") {
  const Image img = make_phantom(PhantomKind::EllipseCardiac, 128, 0);
  CHECK(*std::max_element(img.data.begin(), img.data.end()) >= 0.85);
  const std::set<double> levels(img.data.begin(), img.data.end());
  CHECK(levels.size() >= 4);
}

TEST_CASE("phantom metadata follows the arguments") {
  const Image img = make_phantom(PhantomKind::SheppLogan, 64, 0, 0.5);
  CHECK(img.width == 64);
  CHECK(img.height == 64);
  CHECK(img.pixel_size == 0.5);
}

TEST_CASE("phantom arguments are validated") {
  CHECK_THROWS_AS(make_phantom(PhantomKind::SheppLogan, 7), InvalidConfig);
  CHECK_THROWS_AS(make_phantom(PhantomKind::SheppLogan, 64, 0, 0.0), InvalidConfig);
  CHECK_NOTHROW(make_phantom(PhantomKind::SheppLogan, 8));
}
