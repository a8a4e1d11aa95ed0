#include "oracles.hpp"
#include "salsa/frames.hpp"

#include <gtest/gtest.h>

using namespace salsa;

namespace {

Vector circshift(const Vector& x, Index h, Index w, Index dr, Index dc) {
  Vector out(x.size());
  for (Index r = 0; r < h; ++r) {
    for (Index c = 0; c < w; ++c) out[((r + dr) % h) * w + (c + dc) % w] = x[r * w + c];
  }
  return out;
}

}  // namespace

TEST(Frames, CoefficientDimensions) {
  EXPECT_EQ(make_frame(FrameKind::orthogonal_haar, 16, 8, 3)->coeff_dim(), 128);
  EXPECT_EQ(make_frame(FrameKind::undecimated_haar, 16, 8, 3)->coeff_dim(), 128 * 10);
}

TEST(Frames, RejectsIndivisibleShapes) {
  EXPECT_THROW(make_frame(FrameKind::orthogonal_haar, 12, 16, 3), std::invalid_argument);
  EXPECT_THROW(make_frame(FrameKind::undecimated_haar, 16, 16, 0), std::invalid_argument);
}

TEST(Frames, DimensionMismatchRejected) {
  const auto f = make_frame(FrameKind::undecimated_haar, 8, 8, 1);
  EXPECT_THROW(f->analysis(Vector::Zero(63)), std::invalid_argument);
  EXPECT_THROW(f->synthesis(Vector::Zero(64)), std::invalid_argument);
  EXPECT_THROW(f->analysis(Image(4, 16)), std::invalid_argument);
}

TEST(Frames, ConstantImageHasNoDetail) {
  for (FrameKind kind : {FrameKind::orthogonal_haar, FrameKind::undecimated_haar}) {
    const auto f = make_frame(kind, 16, 16, 2);
    const Vector c = f->analysis(Image::constant(16, 16, 3.0));
    const double energy = c.squaredNorm();
    EXPECT_NEAR(energy, 16 * 16 * 9.0, 1e-9);
    if (kind == FrameKind::undecimated_haar) {
      // Details occupy every band but the last.
      EXPECT_LE(c.head(c.size() - 256).norm(), 1e-12);
    } else {
      // Coarsest approximation is the top-left 4x4 block.
      double outside = 0.0;
      for (Index r = 0; r < 16; ++r) {
        for (Index col = 0; col < 16; ++col) {
          if (r >= 4 || col >= 4) outside += std::abs(c[r * 16 + col]);
        }
      }
      EXPECT_LE(outside, 1e-12);
    }
  }
}

TEST(Frames, OrthogonalPreservesNorm) {
  const auto f = make_frame(FrameKind::orthogonal_haar, 16, 16, 4);
  const Vector x = oracle::random_vector(256);
  EXPECT_NEAR(f->analysis(x).norm(), x.norm(), 1e-12 * x.norm());
  const Vector beta = oracle::random_vector(256);
  EXPECT_LE((f->analysis(f->synthesis(beta)) - beta).norm(), 1e-12 * beta.norm());
}

TEST(Frames, UndecimatedOneLevelRoundTrip) {
  const auto f = make_frame(FrameKind::undecimated_haar, 8, 8, 1);
  const Vector x = oracle::random_vector(64);
  EXPECT_LE((f->synthesis(f->analysis(x)) - x).norm(), 1e-12 * x.norm());
}

TEST(Frames, ZeroCoefficientsGiveZeroImage) {
  const auto f = make_frame(FrameKind::undecimated_haar, 8, 8, 2);
  EXPECT_EQ(f->synthesis(Vector::Zero(f->coeff_dim())).norm(), 0.0);
}

TEST(Frames, TightFrameAndAdjointOverRandomImages) {
  for (FrameKind kind : {FrameKind::orthogonal_haar, FrameKind::undecimated_haar}) {
    for (int levels = 1; levels <= 3; ++levels) {
      const auto f = make_frame(kind, 16, 24, levels);
      for (int t = 0; t < 100; ++t) {
        const Vector x = oracle::random_vector(f->image_dim());
        ASSERT_LE((f->synthesis(f->analysis(x)) - x).norm(), 1e-10 * x.norm());
      }
      const Vector beta = oracle::random_vector(f->coeff_dim());
      const Vector x = oracle::random_vector(f->image_dim());
      EXPECT_NEAR(f->synthesis(beta).dot(x), beta.dot(f->analysis(x)), 1e-10 * beta.norm() * x.norm());
    }
  }
}

TEST(Frames, UndecimatedIsTranslationInvariantPerBand) {
  const Index h = 16, w = 16;
  const auto f = make_frame(FrameKind::undecimated_haar, h, w, 2);
  const Vector x = oracle::random_vector(h * w);
  const Vector shifted = f->analysis(circshift(x, h, w, 3, 5));
  const Vector bands = f->analysis(x);
  const Index n = h * w;
  for (Index b = 0; b < f->coeff_dim() / n; ++b) {
    const Vector want = circshift(bands.segment(b * n, n), h, w, 3, 5);
    EXPECT_LE((shifted.segment(b * n, n) - want).norm(), 1e-12 * (1.0 + want.norm())) << b;
  }
}

TEST(Frames, Linearity) {
  const auto f = make_frame(FrameKind::undecimated_haar, 8, 8, 2);
  const Vector x = oracle::random_vector(64), y = oracle::random_vector(64);
  const Vector lhs = f->analysis(Vector(2.0 * x - 0.5 * y));
  const Vector rhs = 2.0 * f->analysis(x) - 0.5 * f->analysis(y);
  EXPECT_LE((lhs - rhs).norm(), 1e-12 * rhs.norm());
}

TEST(Frames, OrthogonalHaarOneLevelKnownValues) {
  // A 2x2 block (a b; c d) maps to (a+b+c+d)/2 and the three differences.
  const auto f = make_frame(FrameKind::orthogonal_haar, 2, 2, 1);
  const Vector c = f->analysis(Vector{{1.0, 2.0, 3.0, 4.0}});
  EXPECT_NEAR(c[0], 5.0, 1e-14);
  EXPECT_NEAR(c.tail(3).cwiseAbs().sum(), 1.0 + 2.0 + 0.0, 1e-14);
}
