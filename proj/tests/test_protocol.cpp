#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qsr/asymptotics.hpp"
#include "qsr/protocol.hpp"
#include "qsr/random.hpp"

using namespace qsr;

namespace {

PureStateVector random_abr(Rng& rng, long da = 4, long db = 2, long dr = 4) {
  return haar_pure(SystemLayout({{"A", da}, {"B", db}, {"R", dr}}), rng);
}

double pure_overlap(const PureStateVector& a, const PureStateVector& b) {
  PureStateVector bp = permute(b, a.layout().labels());
  return std::abs(a.amplitudes().dot(bp.amplitudes()));
}

}  // namespace

TEST_CASE("merge_trial full transfer leaves nothing to decouple") {
  Rng rng(901);
  auto psi = random_abr(rng);
  auto r = merge_trial(psi, 2, 17);
  CHECK(r.qubits_sent == 2);
  CHECK(r.achieved_fidelity >= 1.0 - 1e-9);
  CHECK(r.decoupling_error <= 1e-9);
}

TEST_CASE("merge_trial with pure uncorrelated A: sigma_A1R is product") {
  Rng rng(902);
  auto br = haar_pure(SystemLayout({{"B", 2}, {"R", 4}}), rng);
  auto psi = tensor(basis_state(SystemLayout::single("A", 2), 0), br);
  auto r = merge_trial(psi, 0, 23);
  // A1 stays pure under any unitary, so sigma_A1R = sigma_A1 (x) psi_R exactly.
  // Against the maximally mixed reference the fidelity is 1/sqrt(d_A), not 1:
  // the reported number follows the reference formula, and product-ness is the
  // meaningful trivial fact here.
  CHECK(r.achieved_fidelity == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(r.achieved_fidelity >= 1.0 - r.decoupling_error - 1e-9);
}

TEST_CASE("merge_trial on Phi_AR with q = 0: fidelity pinned at 1/2") {
  // For d_A = d_R = 2 and q = 0 the decoupled reference is I/4, and any pure
  // sigma_A1R has F(pure, I/4) = 1/2 exactly. The Monte-Carlo mean over Haar
  // samples therefore sits at 1/2, bounded away from 1.
  auto phi = max_entangled("A", "R", 2);
  double sum = 0;
  for (int i = 0; i < 1000; ++i) {
    auto r = merge_trial(phi, 0, derive_seed(404, (std::uint64_t)i));
    CHECK(r.achieved_fidelity == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.achieved_fidelity >= 1.0 - r.decoupling_error - 1e-9);
    sum += r.achieved_fidelity;
  }
  CHECK(sum / 1000 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sum / 1000 < 0.999);
}

TEST_CASE("merge_trial input validation") {
  Rng rng(903);
  auto bad = haar_pure(SystemLayout({{"A", 3}, {"R", 3}}), rng);
  CHECK_THROWS(merge_trial(bad, 1, 1));
  auto psi = random_abr(rng);
  CHECK_THROWS(merge_trial(psi, -1, 1));
  CHECK_THROWS(merge_trial(psi, 3, 1));
}

TEST_CASE("uhlmann decoder on identical states attains fidelity 1") {
  Rng rng(904);
  auto psi = haar_pure(SystemLayout({{"X", 3}, {"Y", 4}}), rng);
  MatrixXcd v = construct_uhlmann_decoder(psi, psi, {"Y"});
  CHECK((v.adjoint() * v - MatrixXcd::Identity(4, 4)).norm() < 1e-10);
  auto [ly, vec] = apply_on(psi, {"Y"}, v, SystemLayout::single("Y", 4));
  PureStateVector out(std::move(ly), std::move(vec));
  CHECK(pure_overlap(psi, out) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("uhlmann decoder undoes a Bob-side local unitary") {
  Rng rng(905);
  auto before = haar_pure(SystemLayout({{"X", 4}, {"Y", 4}}), rng);
  MatrixXcd u = haar_unitary(4, rng);
  auto [tly, tvec] = apply_on(before, {"Y"}, u, SystemLayout::single("Y", 4));
  PureStateVector target(std::move(tly), std::move(tvec));
  MatrixXcd v = construct_uhlmann_decoder(before, target, {"Y"});
  auto [oly, ovec] = apply_on(before, {"Y"}, v, SystemLayout::single("Y", 4));
  PureStateVector out(std::move(oly), std::move(ovec));
  CHECK(pure_overlap(target, out) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("uhlmann decoder attains the marginal fidelity on a perturbed pair") {
  Rng rng(906);
  SystemLayout ly({{"X", 4}, {"Y", 4}});
  auto a = haar_pure(ly, rng);
  VectorXcd bump = a.amplitudes() + 0.1 * haar_pure(ly, rng).amplitudes();
  PureStateVector b(ly, bump / bump.norm());
  MatrixXcd v = construct_uhlmann_decoder(a, b, {"Y"});
  auto [oly, ovec] = apply_on(a, {"Y"}, v, SystemLayout::single("Y", 4));
  PureStateVector out(std::move(oly), std::move(ovec));
  double expect = fidelity(a.marginal({"X"}), b.marginal({"X"}));
  CHECK(pure_overlap(b, out) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("uhlmann decoder signals dimension shortfall") {
  Rng rng(907);
  auto before = haar_pure(SystemLayout({{"X", 2}, {"Y", 4}}), rng);
  auto target = haar_pure(SystemLayout({{"X", 2}, {"Y", 2}}), rng);
  CHECK_THROWS_WITH_AS(construct_uhlmann_decoder(before, target, {"Y"}),
                       doctest::Contains("dimension shortfall"),
                       std::invalid_argument);
}

TEST_CASE("merge_stats: full transfer succeeds always and runs reproducibly") {
  Rng rng(908);
  auto psi = random_abr(rng);
  auto s1 = merge_stats(psi, 2, 40, 0.1, 777);
  CHECK(s1.success_fraction == 1.0);
  CHECK(s1.mean_fidelity >= 1.0 - 1e-9);
  auto s2 = merge_stats(psi, 2, 40, 0.1, 777);
  CHECK(s1.mean_fidelity == s2.mean_fidelity);
  for (std::size_t i = 0; i < s1.trials.size(); ++i) {
    CHECK(s1.trials[i].seed == s2.trials[i].seed);
    CHECK(s1.trials[i].achieved_fidelity == s2.trials[i].achieved_fidelity);
  }
}

TEST_CASE("merge fidelity is nondecreasing in q for almost all paired seeds") {
  Rng rng(909);
  auto psi = random_abr(rng);
  int ok = 0, total = 0;
  for (int i = 0; i < 50; ++i) {
    std::uint64_t seed = derive_seed(5150, (std::uint64_t)i);
    double prev = -1;
    bool mono = true;
    for (int q = 0; q <= 2; ++q) {
      auto r = merge_trial(psi, q, seed);
      CHECK(r.achieved_fidelity >= 0.0);
      CHECK(r.achieved_fidelity <= 1.0 + 1e-12);
      CHECK(r.achieved_fidelity >= 1.0 - r.decoupling_error - 1e-9);
      if (r.achieved_fidelity < prev - 1e-12) mono = false;
      prev = r.achieved_fidelity;
    }
    ok += mono ? 1 : 0;
    ++total;
  }
  CHECK((double)ok / total >= 0.9);
}

TEST_CASE("merge trial CSV log schema") {
  Rng rng(910);
  auto psi = random_abr(rng);
  auto stats = merge_stats(psi, 1, 5, 0.2, 31);
  std::string csv = merge_trials_csv(stats.trials);
  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "seed,q,decoupling_error,fidelity");
  int rows = 0;
  while (std::getline(in, line)) {
    unsigned long long seed;
    int q;
    double err, fid;
    CHECK(std::sscanf(line.c_str(), "%llu,%d,%lf,%lf", &seed, &q, &err, &fid) == 4);
    CHECK(seed == stats.trials[rows].seed);
    CHECK(q == 1);
    CHECK(fid == stats.trials[rows].achieved_fidelity);
    ++rows;
  }
  CHECK(rows == 5);
}

TEST_CASE("redistribute: full budget degenerates to direct transfer") {
  Rng rng(911);
  auto psi = haar_pure(SystemLayout({{"A", 4}, {"B", 2}, {"C", 2}, {"R", 4}}), rng);
  auto out = redistribute(psi, 2, 0, 0.1, 55);
  CHECK(out.qubits_physically_sent == 2);
  CHECK(out.ebits_consumed == 0);
  CHECK(out.ebits_returned == 0);
  CHECK(out.final_fidelity >= 1.0 - 1e-9);
}

TEST_CASE("redistribute: pure uncorrelated A needs no communication") {
  Rng rng(912);
  auto bcr = haar_pure(SystemLayout({{"B", 2}, {"C", 2}, {"R", 4}}), rng);
  auto psi = tensor(basis_state(SystemLayout::single("A", 2), 0), bcr);
  auto out = redistribute(psi, 0, 0, 0.1, 56);
  CHECK(out.qubits_physically_sent == 0);
  CHECK(out.final_fidelity >= 1.0 - 1e-9);
  CHECK(out.ebits_consumed - out.ebits_returned == 0);
}

TEST_CASE("redistribute: repackaging needs enough pre-shared pairs") {
  Rng rng(913);
  auto psi = haar_pure(SystemLayout({{"A", 4}, {"B", 2}, {"C", 2}, {"R", 4}}), rng);
  CHECK_THROWS_WITH_AS(redistribute(psi, 0, 1, 0.1, 57),
                       doctest::Contains("insufficient"), std::invalid_argument);
}

TEST_CASE("redistribute: ebit accounting balances across repackaging") {
  Rng rng(914);
  auto psi = haar_pure(SystemLayout({{"A", 4}, {"B", 2}, {"C", 2}, {"R", 4}}), rng);
  auto out = redistribute(psi, 1, 3, 0.25, 58);
  CHECK(out.qubits_physically_sent == 1);
  CHECK(out.ebits_consumed == 3);
  CHECK(out.ebits_returned == 2);
  CHECK(out.ebits_consumed - out.ebits_returned == 1);  // log k - log m
  CHECK(out.final_fidelity >= 0.0);
  CHECK(out.final_fidelity <= 1.0 + 1e-9);
  CHECK(out.per_stage.size() >= 4);
}

TEST_CASE("redistribute: relay budget on a GHZ-like state beats the naive merge") {
  SystemLayout ly({{"A", 2}, {"B", 2}, {"C", 2}, {"R", 8}});
  VectorXcd amps = VectorXcd::Zero(ly.total_dim());
  // (|000>|0> + |111>|7>) / sqrt(2): R records the branch, keeping psi pure.
  amps(0) = 1.0 / std::sqrt(2.0);
  amps(ly.total_dim() - 1) = 1.0 / std::sqrt(2.0);
  PureStateVector psi(ly, amps);

  double eps = 0.2;
  auto relay = thm1_cost(psi, eps);
  auto naive = decompose_delta(psi, eps);
  auto clamp_budget = [](double bits) {
    long q = (long)std::ceil(bits);
    return (int)std::min(1L, std::max(0L, q));
  };
  int q_relay = clamp_budget(relay.one_shot_cost);
  int q_direct = clamp_budget(naive.delta_q);
  CHECK(q_relay <= q_direct);

  auto out = redistribute(psi, q_relay, 1 - q_relay, eps, 59);
  CHECK(out.qubits_physically_sent <= q_direct);
  CHECK(out.final_fidelity >= 1.0 - 1e-6);
}

TEST_CASE("redistribute input validation") {
  Rng rng(915);
  auto psi = haar_pure(SystemLayout({{"A", 4}, {"B", 2}, {"C", 2}, {"R", 4}}), rng);
  CHECK_THROWS(redistribute(psi, 3, 4, 0.1, 1));
  CHECK_THROWS(redistribute(psi, 1, -1, 0.1, 1));
  CHECK_THROWS(redistribute(psi, 1, 2, 0.0, 1));
  auto bad = haar_pure(SystemLayout({{"A", 3}, {"B", 2}, {"C", 2}, {"R", 4}}), rng);
  CHECK_THROWS(redistribute(bad, 1, 2, 0.1, 1));
}
