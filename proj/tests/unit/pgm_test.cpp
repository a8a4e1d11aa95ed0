#include "oracles.hpp"
#include "salsa/pgm.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace salsa;

namespace {

std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "salsa_pgm_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Pgm, EightBitRoundTrip) {
  Image x(3, 5);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = static_cast<double>(i * 17 % 256);
  const auto path = temp_dir() / "a.pgm";
  write_pgm8(path, x);
  const Image back = read_pgm(path);
  ASSERT_TRUE(back.same_shape(x));
  EXPECT_EQ((back.data() - x.data()).norm(), 0.0);
}

TEST(Pgm, EightBitClampsAndRounds) {
  Image x(1, 3, Vector{{-4.0, 12.6, 300.0}});
  const auto path = temp_dir() / "b.pgm";
  write_pgm8(path, x);
  const Image back = read_pgm(path);
  EXPECT_EQ(back(0, 0), 0.0);
  EXPECT_EQ(back(0, 1), 13.0);
  EXPECT_EQ(back(0, 2), 255.0);
}

TEST(Pgm, SixteenBitWithSidecar) {
  const Image x(7, 9, oracle::random_vector(63));
  const auto path = temp_dir() / "c.pgm";
  const PgmRange range = write_pgm16(path, x);
  EXPECT_EQ(range.min, x.data().minCoeff());
  EXPECT_EQ(range.max, x.data().maxCoeff());
  EXPECT_TRUE(std::filesystem::exists(range_sidecar_path(path)));
  const Image back = read_pgm16_scaled(path);
  const double step = (range.max - range.min) / 65535.0;
  EXPECT_LE((back.data() - x.data()).cwiseAbs().maxCoeff(), 0.5 * step + 1e-12);
}

TEST(Pgm, ConstantImageSixteenBit) {
  const Image x = Image::constant(2, 2, 4.25);
  const auto path = temp_dir() / "d.pgm";
  write_pgm16(path, x);
  EXPECT_EQ(read_pgm16_scaled(path).data(), x.data());
}

TEST(Pgm, Float64IsExact) {
  const Image x(4, 3, oracle::random_vector(12));
  const auto path = temp_dir() / "e.f64";
  write_f64(path, x);
  EXPECT_EQ(read_f64(path, 4, 3).data(), x.data());
  EXPECT_THROW(read_f64(path, 5, 3), std::runtime_error);
}

TEST(Pgm, RejectsMalformedFiles) {
  const auto path = temp_dir() / "bad.pgm";
  {
    std::ofstream out(path, std::ios::binary);
    out << "P2\n2 2\n255\n1 2 3 4\n";
  }
  EXPECT_THROW(read_pgm(path), std::runtime_error);
  {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n4 4\n255\n" << std::string(3, 'x');
  }
  EXPECT_THROW(read_pgm(path), std::runtime_error);
  EXPECT_THROW(read_pgm(temp_dir() / "missing.pgm"), std::runtime_error);
}

TEST(Pgm, ReadsShippedTestImage) {
  const Image x = read_pgm(std::filesystem::path(SALSA_DATA_DIR) / "cameraman256.pgm");
  EXPECT_EQ(x.height(), 256);
  EXPECT_EQ(x.width(), 256);
  EXPECT_GE(x.data().minCoeff(), 0.0);
  EXPECT_LE(x.data().maxCoeff(), 255.0);
}
