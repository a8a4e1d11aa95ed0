#include "oracles.hpp"
#include "salsa/fft.hpp"
#include "salsa/grid.hpp"

#include <gtest/gtest.h>

using namespace salsa;

namespace {

ComplexImage random_complex(Index h, Index w) {
  ComplexImage x(h, w);
  const Vector re = oracle::random_vector(h * w), im = oracle::random_vector(h * w);
  for (Index i = 0; i < h * w; ++i) x.data()[i] = Complex(re[i], im[i]);
  return x;
}

}  // namespace

TEST(Grid, RejectsMismatchedData) {
  EXPECT_THROW(Image(2, 3, Vector::Zero(5)), std::invalid_argument);
  EXPECT_THROW(Image(0, 3), std::invalid_argument);
}

TEST(Grid, RowMajorIndexing) {
  Image x(2, 3);
  x(1, 2) = 7.0;
  EXPECT_EQ(x.data()[5], 7.0);
}

TEST(Grid, FiniteCheck) {
  Image x = Image::constant(2, 2, 1.0);
  EXPECT_TRUE(all_finite(x));
  x(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_FALSE(all_finite(x));
}

TEST(Dft2, ConstantImageHasOnlyDc) {
  const Index n = 8;
  const double c = 2.5;
  const ComplexImage s = dft2(Image::constant(n, n, c));
  EXPECT_NEAR(s(0, 0).real(), c * static_cast<double>(n), 1e-12);
  EXPECT_NEAR(s(0, 0).imag(), 0.0, 1e-12);
  double rest = 0.0;
  for (Index i = 1; i < n * n; ++i) rest += std::abs(s.data()[i]);
  EXPECT_LT(rest, 1e-12);
}

TEST(Dft2, RoundTrip) {
  const ComplexImage x = random_complex(8, 8);
  const ComplexImage back = idft2(dft2(x));
  EXPECT_LE((back.data() - x.data()).norm() / x.data().norm(), 1e-12);
}

TEST(Dft2, Parseval) {
  const ComplexImage x = random_complex(16, 16);
  EXPECT_NEAR(dft2(x).data().norm(), x.data().norm(), 1e-10 * x.data().norm());
}

TEST(Dft2, MatchesDirectSum) {
  const ComplexImage x = random_complex(6, 10);
  const ComplexImage want = oracle::naive_dft2(x, -1);
  const ComplexImage got = dft2(x);
  EXPECT_LE((got.data() - want.data()).norm() / want.data().norm(), 1e-12);
  const ComplexImage inv = idft2(x);
  EXPECT_LE((inv.data() - oracle::naive_dft2(x, +1).data()).norm() / x.data().norm(), 1e-12);
}

TEST(Idft2, ZeroSpectrumGivesZeroImage) {
  const ComplexImage z(4, 6);
  EXPECT_EQ(idft2(z).data().norm(), 0.0);
}

TEST(Idft2, DcEntryGivesConstant) {
  const Index n = 8;
  ComplexImage s(n, n);
  s(0, 0) = 3.0 * static_cast<double>(n);
  const ComplexImage x = idft2(s);
  for (Index i = 0; i < n * n; ++i) {
    EXPECT_NEAR(x.data()[i].real(), 3.0, 1e-12);
    EXPECT_NEAR(x.data()[i].imag(), 0.0, 1e-12);
  }
}

TEST(Fft2, InPlaceAndOutOfPlaceAgree) {
  // Large enough that FFTW picks a different algorithm from small sizes.
  for (Index n : {8, 64, 256}) {
    const Fft2 fft(n, n);
    const ComplexImage x = random_complex(n, n);
    ComplexVector out = fft.forward(x.data());
    ComplexVector inplace = x.data();
    fft.forward(inplace.data(), inplace.data());
    EXPECT_LE((out - inplace).norm() / out.norm(), 1e-13) << n;
    EXPECT_NEAR(out.norm(), std::sqrt(static_cast<double>(n * n)) * x.data().norm(), 1e-9 * out.norm());
  }
}

TEST(Fft2, UnitaryRealRoundTrip) {
  const Fft2 fft(12, 20);
  const Vector x = oracle::random_vector(240);
  const ComplexVector s = fft.unitary_forward(x);
  EXPECT_NEAR(s.norm(), x.norm(), 1e-12 * x.norm());
  EXPECT_LE((fft.unitary_backward_real(s) - x).norm() / x.norm(), 1e-13);
}

TEST(Dft2, UnitarityOverRandomShapes) {
  for (int trial = 0; trial < 50; ++trial) {
    const Index h = 1 + static_cast<Index>(oracle::uniform(0, 32));
    const Index w = 1 + static_cast<Index>(oracle::uniform(0, 32));
    const ComplexImage x = random_complex(h, w);
    const ComplexImage s = dft2(x);
    EXPECT_NEAR(s.data().norm(), x.data().norm(), 1e-10 * x.data().norm());
    EXPECT_LE((idft2(s).data() - x.data()).norm() / x.data().norm(), 1e-12);
  }
}
