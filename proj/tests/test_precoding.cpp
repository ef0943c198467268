#include <cmath>
#include <complex>
#include <doctest.h>

#include "cfsim/errors.hpp"
#include "cfsim/precoding.hpp"
#include "cfsim/rng.hpp"

using namespace cfsim;
using Complex = std::complex<double>;

namespace {

Eigen::MatrixXcd random_channel(Stream& s, int rows, int cols, double scale = 1.0) {
  Eigen::MatrixXcd h(rows, cols);
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) h(r, c) = scale * s.cnormal();
  }
  return h;
}

double cosine_sim(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace

TEST_CASE("mr_direction returns the channel view unchanged") {
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(4);
  e1(0) = 1.0;
  CHECK(mr_direction(e1) == e1);
  CHECK(mr_direction(Eigen::VectorXcd::Zero(3)).norm() == 0.0);
  Stream s = split_stream(1, 0, StreamPurpose::kChannel);
  const Eigen::MatrixXcd h = random_channel(s, 6, 1);
  CHECK(mr_direction(h.col(0)) == h.col(0));
}

TEST_CASE("scalar MMSE closed form") {
  Eigen::MatrixXcd h(1, 1);
  h(0, 0) = Complex(0.1, 0.0);
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(1, 100.0);
  const Eigen::MatrixXcd w = mmse_directions(h, p, 1.0);
  // 100 * 0.1 / (100 * 0.01 + 1) = 5
  CHECK(w(0, 0).real() == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(w(0, 0).imag() == doctest::Approx(0.0));
}

TEST_CASE("MMSE direction converges to MR as noise dominates") {
  Stream s = split_stream(2, 0, StreamPurpose::kChannel);
  const Eigen::MatrixXcd h = random_channel(s, 6, 3);
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(3, 1.0);
  double prev = 0.0;
  double sigma2 = 0.01;
  for (int step = 0; step < 9; ++step, sigma2 *= 10.0) {
    const Eigen::MatrixXcd w = mmse_directions(h, p, sigma2);
    const double cos_sim = cosine_sim(w.col(0), h.col(0));
    CHECK(cos_sim >= prev - 1e-12);  // angle shrinks monotonically
    prev = cos_sim;
  }
  CHECK(prev >= 1.0 - 1e-9);
}

TEST_CASE("orthogonal channels decouple under MMSE") {
  const int dim = 4;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, 2);
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(2, 5.0);
  const Eigen::MatrixXcd w = mmse_directions(h, p, 0.3);
  CHECK(std::abs(h.col(1).dot(w.col(0))) < 1e-12);
  CHECK(std::abs(h.col(0).dot(w.col(1))) < 1e-12);
  // each direction collinear with its channel
  CHECK(cosine_sim(w.col(0), h.col(0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single-UE MMSE matches the rank-1 closed form") {
  Stream s = split_stream(3, 0, StreamPurpose::kChannel);
  const Eigen::MatrixXcd h = random_channel(s, 3, 1);
  const double p = 40.0, sigma2 = 0.7;
  const Eigen::MatrixXcd w =
      mmse_directions(h, Eigen::VectorXd::Constant(1, p), sigma2);
  // Sherman-Morrison: p (sigma2 I + p h h^H)^{-1} h = p h / (sigma2 + p ||h||^2)
  const Eigen::VectorXcd expected = p * h.col(0) / (sigma2 + p * h.col(0).squaredNorm());
  CHECK((w.col(0) - expected).norm() < 1e-12 * expected.norm());
}

TEST_CASE("solve_hpd recovers the right-hand side") {
  Stream s = split_stream(4, 0, StreamPurpose::kChannel);
  const int dim = 12;
  const Eigen::MatrixXcd h = random_channel(s, dim, 5);
  Eigen::MatrixXcd a = 0.8 * Eigen::MatrixXcd::Identity(dim, dim);
  for (int i = 0; i < 5; ++i) a += 3.0 * h.col(i) * h.col(i).adjoint();
  const Eigen::MatrixXcd b = random_channel(s, dim, 4);
  const Eigen::MatrixXcd x = solve_hpd(a, b);
  CHECK((a * x - b).norm() <= 1e-10 * b.norm());
}

TEST_CASE("solve_hpd rejects an indefinite matrix") {
  const Eigen::MatrixXcd a = -Eigen::MatrixXcd::Identity(3, 3);
  const Eigen::MatrixXcd b = Eigen::MatrixXcd::Ones(3, 1);
  CHECK_THROWS_AS(solve_hpd(a, b), NumericalError);
}

TEST_CASE("MMSE directions are invariant to a common power/noise rescale") {
  Stream s = split_stream(5, 0, StreamPurpose::kChannel);
  const Eigen::MatrixXcd h = random_channel(s, 8, 4);
  Eigen::VectorXd p(4);
  p << 1.0, 0.5, 0.8, 1.2;
  const double sigma2 = 0.3;
  const double c = 137.5;
  const Eigen::MatrixXcd w1 = mmse_directions(h, p, sigma2);
  const Eigen::MatrixXcd w2 = mmse_directions(h, (c * p).eval(), c * sigma2);
  for (int k = 0; k < 4; ++k) {
    const Eigen::VectorXcd d1 = w1.col(k) / w1.col(k).norm();
    const Eigen::VectorXcd d2 = w2.col(k) / w2.col(k).norm();
    CHECK((d1 - d2).norm() < 1e-10);
  }
}

TEST_CASE("equal-split power policy") {
  NetworkConfig cfg;  // L_T=96, K_T=40, P_ap=1000
  cfg.grid = {2, 2};  // L = 24

  const PowerPolicy cluster = allocate_power(cfg, Architecture::kClusterBased);
  CHECK(cluster.rho_mw(0) == doctest::Approx(600.0));  // 24*1000/40
  const PowerPolicy cent = allocate_power(cfg, Architecture::kCentralized);
  CHECK(cent.rho_mw(0) == doctest::Approx(2400.0));  // 96*1000/40
  const PowerPolicy dist = allocate_power(cfg, Architecture::kDistributed);
  CHECK(dist.rho_mw(0) == doctest::Approx(25.0));  // 1000/40

  // per-block budget: sum over UEs equals (#APs in block) * P_ap
  CHECK(cluster.rho_mw.sum() == doctest::Approx(24.0 * 1000.0));
  CHECK(cent.rho_mw.sum() == doctest::Approx(96.0 * 1000.0));
  CHECK(dist.rho_mw.sum() == doctest::Approx(1000.0));
}

TEST_CASE("normalize scales by the batch mean") {
  // two vectors with ||.||^2 = 2 and 6: batch mean 4, rho 9 -> scale 1.5
  std::vector<Eigen::VectorXcd> batch(2, Eigen::VectorXcd::Zero(2));
  batch[0](0) = std::sqrt(2.0);
  batch[1](0) = std::sqrt(6.0);
  const auto out = normalize(batch, 9.0);
  CHECK(out[0](0).real() == doctest::Approx(1.5 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(out[1](0).real() == doctest::Approx(1.5 * std::sqrt(6.0)).epsilon(1e-15));

  SUBCASE("rho = 0 gives zero vectors") {
    const auto zero = normalize(batch, 0.0);
    CHECK(zero[0].norm() == 0.0);
    CHECK(zero[1].norm() == 0.0);
  }

  SUBCASE("all-zero batch is degenerate") {
    std::vector<Eigen::VectorXcd> zeros(3, Eigen::VectorXcd::Zero(4));
    CHECK_THROWS_AS(normalize(zeros, 1.0), DegenerateChannelError);
  }

  SUBCASE("batch mean of ||w||^2 equals rho after scaling") {
    Stream s = split_stream(6, 0, StreamPurpose::kChannel);
    std::vector<Eigen::VectorXcd> rnd;
    for (int r = 0; r < 7; ++r) rnd.push_back(random_channel(s, 5, 1, 3.7).col(0));
    const double rho = 0.62;
    const auto scaled = normalize(rnd, rho);
    double mean = 0;
    for (const auto& v : scaled) mean += v.squaredNorm();
    mean /= static_cast<double>(scaled.size());
    CHECK(mean == doctest::Approx(rho).epsilon(1e-12));
  }
}

TEST_CASE("blocked normalization matches the per-slot primitive") {
  Stream s = split_stream(7, 0, StreamPurpose::kChannel);
  const int n_blocks = 3, block_len = 2, n_ues = 2, reps = 5;
  std::vector<Eigen::MatrixXcd> batch;
  for (int r = 0; r < reps; ++r) batch.push_back(random_channel(s, n_blocks * block_len, n_ues));
  const std::vector<Eigen::MatrixXcd> raw = batch;
  Eigen::VectorXd rho(n_ues);
  rho << 2.0, 0.5;

  const NormalizeStats stats = normalize_blocked_in_place(batch, n_blocks, rho);
  CHECK(stats.zero_slots == 0);
  CHECK(stats.max_rel_power_err <= 1e-12);

  for (int k = 0; k < n_ues; ++k) {
    for (int b = 0; b < n_blocks; ++b) {
      std::vector<Eigen::VectorXcd> slot;
      for (int r = 0; r < reps; ++r) {
        slot.push_back(raw[r].col(k).segment(b * block_len, block_len));
      }
      const auto expected = normalize(slot, rho(k));
      for (int r = 0; r < reps; ++r) {
        const Eigen::VectorXcd got = batch[r].col(k).segment(b * block_len, block_len);
        CHECK((got - expected[r]).norm() <= 1e-14 * expected[r].norm());
      }
    }
  }
}

TEST_CASE("zero-norm slots become zero precoders, fully zero batches throw") {
  std::vector<Eigen::MatrixXcd> batch(3, Eigen::MatrixXcd::Zero(4, 1));
  for (auto& w : batch) w.block(0, 0, 2, 1).setOnes();  // block 0 live, block 1 dead
  const Eigen::VectorXd rho = Eigen::VectorXd::Constant(1, 1.0);
  const NormalizeStats stats = normalize_blocked_in_place(batch, 2, rho);
  CHECK(stats.zero_slots == 1);
  for (const auto& w : batch) CHECK(w.block(2, 0, 2, 1).norm() == 0.0);

  std::vector<Eigen::MatrixXcd> dead(3, Eigen::MatrixXcd::Zero(4, 1));
  CHECK_THROWS_AS(normalize_blocked_in_place(dead, 2, rho), DegenerateChannelError);
}

TEST_CASE("raw_directions: blocked MMSE equals per-block solves; MR is the channel") {
  Stream s = split_stream(8, 0, StreamPurpose::kChannel);
  const int n_blocks = 4, block_len = 3, n_ues = 3;
  const Eigen::MatrixXcd h = random_channel(s, n_blocks * block_len, n_ues);
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(n_ues, 2.0);
  const double sigma2 = 0.05;

  CHECK(raw_directions(h, PrecoderType::kMr, n_blocks, p, sigma2) == h);

  const Eigen::MatrixXcd w = raw_directions(h, PrecoderType::kMmse, n_blocks, p, sigma2);
  for (int b = 0; b < n_blocks; ++b) {
    const Eigen::MatrixXcd expected =
        mmse_directions(h.middleRows(b * block_len, block_len), p, sigma2);
    CHECK((w.middleRows(b * block_len, block_len) - expected).norm() == 0.0);
  }

  CHECK_THROWS_AS(raw_directions(h, PrecoderType::kMmse, 5, p, sigma2), NumericalError);
}
