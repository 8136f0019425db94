#include "qsr/protocol.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>

#include <Eigen/SVD>

#include "qsr/linalg.hpp"

namespace qsr {

namespace {

int log2_exact(long d, const char* who) {
  int n = 0;
  long v = d;
  while (v > 1) {
    if (v % 2 != 0) throw std::invalid_argument(std::string(who) + ": dim not a power of two");
    v /= 2;
    ++n;
  }
  return n;
}

/// |<a|b>| after aligning b's subsystem order with a's.
double overlap(const PureStateVector& a, const PureStateVector& b) {
  PureStateVector bp = permute(b, a.layout().labels());
  return std::abs(a.amplitudes().dot(bp.amplitudes()));
}

std::string format_stage(const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

}  // namespace

MergeTrialResult merge_trial(const PureStateVector& psi, int q, std::uint64_t seed) {
  if (!psi.layout().has_label("A") || !psi.layout().has_label("R"))
    throw std::invalid_argument("merge_trial: state needs labels A and R");
  long da = psi.layout().dim_of("A");
  int n_a = log2_exact(da, "merge_trial");
  if (q < 0 || q > n_a)
    throw std::invalid_argument("merge_trial: q must lie in [0, log2 d_A]");

  Rng rng(seed);
  MatrixXcd u = haar_unitary(da, rng);
  auto [ly, vec] = apply_on(psi, {"A"}, u, SystemLayout::single("A", da));
  PureStateVector rotated(std::move(ly), std::move(vec));
  PureStateVector split = split_subsystem(rotated, "A", "A1", da >> q, "A2", 1L << q);

  DensityOperator sigma = permute(split.marginal({"A1", "R"}), {"A1", "R"});
  long d1 = da >> q;
  DensityOperator pi = DensityOperator::unchecked(
      SystemLayout::single("A1", d1), MatrixXcd::Identity(d1, d1) / (double)d1,
      TraceClass::normalized);
  DensityOperator ref = tensor(pi, psi.marginal({"R"}));

  MergeTrialResult out;
  out.qubits_sent = q;
  out.seed = seed;
  out.decoupling_error = trace_distance(sigma, ref);
  out.achieved_fidelity = fidelity(sigma, ref);
  return out;
}

MatrixXcd construct_uhlmann_decoder(const PureStateVector& before,
                                    const PureStateVector& target,
                                    const std::vector<std::string>& bob_labels) {
  for (const auto& l : bob_labels)
    if (!before.layout().has_label(l))
      throw std::invalid_argument("construct_uhlmann_decoder: unknown label " + l);
  std::vector<std::string> rest = before.layout().complement(bob_labels);
  for (const auto& l : rest) {
    if (!target.layout().has_label(l))
      throw std::invalid_argument("construct_uhlmann_decoder: target misses shared label " + l);
    if (target.layout().dim_of(l) != before.layout().dim_of(l))
      throw std::invalid_argument("construct_uhlmann_decoder: shared dim mismatch on " + l);
  }
  std::vector<std::string> tbob = target.layout().complement(rest);
  long d_rest = before.layout().dim_of(rest);
  long dbb = before.dim() / d_rest;
  long dbt = target.dim() / d_rest;
  if (dbt < dbb)
    throw std::invalid_argument(
        "construct_uhlmann_decoder: dimension shortfall, target side smaller than source side");

  std::vector<std::string> b_order = rest;
  b_order.insert(b_order.end(), bob_labels.begin(), bob_labels.end());
  std::vector<std::string> t_order = rest;
  t_order.insert(t_order.end(), tbob.begin(), tbob.end());
  PureStateVector bp = permute(before, b_order);
  PureStateVector tp = permute(target, t_order);

  using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> mb(bp.amplitudes().data(), d_rest, dbb);
  Eigen::Map<const RowMat> mt(tp.amplitudes().data(), d_rest, dbt);

  // Overlap with the target is sum_{jk} G(j,k) V(j,k); the polar part of
  // conj(G) maximizes it at ||G||_1, the fidelity of the shared marginals.
  MatrixXcd g = (mt.adjoint() * mb).conjugate();
  Eigen::JacobiSVD<MatrixXcd> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU().leftCols(dbb) * svd.matrixV().adjoint();
}

MergeStats merge_stats(const PureStateVector& psi, int q, int trials, double eps,
                       std::uint64_t master_seed) {
  if (trials < 1) throw std::invalid_argument("merge_stats: trials must be positive");
  if (eps < 0 || eps > 1)
    throw std::invalid_argument("merge_stats: eps must lie in [0, 1]");
  MergeStats stats;
  stats.min_fidelity = 1.0;
  stats.max_fidelity = 0.0;
  stats.trials.reserve((std::size_t)trials);
  double sum = 0;
  int good = 0;
  for (int i = 0; i < trials; ++i) {
    MergeTrialResult r = merge_trial(psi, q, derive_seed(master_seed, (std::uint64_t)i));
    sum += r.achieved_fidelity;
    stats.min_fidelity = std::min(stats.min_fidelity, r.achieved_fidelity);
    stats.max_fidelity = std::max(stats.max_fidelity, r.achieved_fidelity);
    if (r.achieved_fidelity >= 1.0 - eps) ++good;
    stats.trials.push_back(r);
  }
  stats.mean_fidelity = sum / trials;
  stats.success_fraction = (double)good / trials;
  return stats;
}

std::string merge_trials_csv(const std::vector<MergeTrialResult>& trials) {
  std::string out = "seed,q,decoupling_error,fidelity\n";
  char buf[128];
  for (const auto& t : trials) {
    std::snprintf(buf, sizeof(buf), "%llu,%d,%.17g,%.17g\n",
                  (unsigned long long)t.seed, t.qubits_sent, t.decoupling_error,
                  t.achieved_fidelity);
    out += buf;
  }
  return out;
}

RedistributionOutcome redistribute(const PureStateVector& psi, int q_budget,
                                   int initial_ebits, double eps,
                                   std::uint64_t seed) {
  for (const char* l : {"A", "B", "C", "R"})
    if (!psi.layout().has_label(l))
      throw std::invalid_argument(std::string("redistribute: missing label ") + l);
  if (psi.layout().size() != 4)
    throw std::invalid_argument("redistribute: unexpected extra labels");
  if (eps <= 0 || eps >= 1)
    throw std::invalid_argument("redistribute: eps must lie in (0, 1)");
  if (initial_ebits < 0)
    throw std::invalid_argument("redistribute: initial_ebits must be nonnegative");
  long da = psi.layout().dim_of("A");
  long db = psi.layout().dim_of("B");
  long dc = psi.layout().dim_of("C");
  int n_a = log2_exact(da, "redistribute");
  log2_exact(db, "redistribute");
  log2_exact(dc, "redistribute");
  if (q_budget < 0 || q_budget > n_a)
    throw std::invalid_argument("redistribute: q_budget must lie in [0, log2 d_A]");

  RedistributionOutcome out;
  out.ebits_consumed = initial_ebits;

  DensityOperator rho_a = psi.marginal({"A"});
  auto [avals, avecs] = hermitian_eig(rho_a.matrix());
  if (numerical_rank(avals) == 1) {
    // A carries no correlations; Bob synthesizes it locally and nothing moves.
    VectorXcd a = avecs.col(avecs.cols() - 1);
    PureStateVector local(SystemLayout::single("Ab", da), a / a.norm());
    PureStateVector final_state = tensor(psi, local);
    PureStateVector target =
        tensor(rename_subsystem(psi, "A", "Ab"),
               PureStateVector(SystemLayout::single("A", da), a / a.norm()));
    out.qubits_physically_sent = 0;
    out.ebits_returned = initial_ebits;
    out.final_fidelity = overlap(target, final_state);
    out.per_stage.push_back("stage0: rho_A pure, local synthesis at Bob, nothing sent");
    out.per_stage.push_back(format_stage("stage0: final fidelity %.12g", out.final_fidelity));
    return out;
  }

  int m = n_a - q_budget;
  if (initial_ebits < m)
    throw std::invalid_argument(
        "redistribute: initial_ebits insufficient, repackaging needs log2(d_A) - q_budget pairs");
  long dm = 1L << m;
  long dq = 1L << q_budget;
  long dk_rest = 1L << (initial_ebits - m);

  Rng rng(seed);
  MatrixXcd u = haar_unitary(da, rng);
  auto [ly1, vec1] = apply_on(psi, {"A"}, u, SystemLayout::single("A", da));
  PureStateVector rotated(std::move(ly1), std::move(vec1));
  PureStateVector stage1 = split_subsystem(rotated, "A", "A1", dm, "A2", dq);
  {
    DensityOperator sigma = permute(stage1.marginal({"A1", "B", "R"}), {"A1", "B", "R"});
    DensityOperator pi = DensityOperator::unchecked(
        SystemLayout::single("A1", dm), MatrixXcd::Identity(dm, dm) / (double)dm,
        TraceClass::normalized);
    DensityOperator ref = tensor(pi, permute(psi.marginal({"B", "R"}), {"B", "R"}));
    out.per_stage.push_back(format_stage(
        "stage1: Haar twirl on A, kept %d qubits, sent %d; decoupling error %.12g",
        m, q_budget, trace_distance(sigma, ref)));
  }

  // Charlie's Uhlmann decoder turns (A2, C) into ebit halves with A1 plus the
  // merged copy of A.
  PureStateVector merge_target =
      tensor(max_entangled("A1", "C1", dm), rename_subsystem(psi, "A", "At"));
  MatrixXcd v = construct_uhlmann_decoder(stage1, merge_target, {"A2", "C"});
  auto [ly2, vec2] =
      apply_on(stage1, {"A2", "C"}, v, merge_target.layout().restricted({"C1", "At", "C"}));
  PureStateVector stage2(std::move(ly2), std::move(vec2));
  out.per_stage.push_back(
      format_stage("stage2: merge to the C side, fidelity %.12g, norm drift %.3g",
                   overlap(merge_target, stage2),
                   std::abs(stage2.amplitudes().norm() - 1.0)));

  // Repackaging: set C1 aside, substitute halves of the pre-shared pairs and
  // undo the decoder. The coisometry may leak amplitude; track it.
  PureStateVector with_ebits = tensor(stage2, max_entangled("C0", "B0", 1L << initial_ebits));
  with_ebits = split_subsystem(with_ebits, "C0", "C0a", dm, "C0b", dk_rest);
  with_ebits = split_subsystem(with_ebits, "B0", "B0a", dm, "B0b", dk_rest);
  auto [ly3, vec3] = apply_on(with_ebits, {"C0a", "At", "C"}, v.adjoint(),
                              SystemLayout({{"A2", dq}, {"C", dc}}));
  double amplitude = vec3.norm();
  if (amplitude < 1e-12)
    throw std::runtime_error("redistribute: repackaging annihilated the state");
  PureStateVector stage3(std::move(ly3), vec3 / amplitude);
  out.per_stage.push_back(format_stage(
      "stage3: repackaged %d ebits, set %d pairs aside untouched, leakage %.12g",
      m, initial_ebits - m, 1.0 - amplitude * amplitude));

  // Physically send A2 to Bob; he decodes with B0a and B.
  PureStateVector final_target =
      tensor(tensor(max_entangled("A1", "C1", dm), rename_subsystem(psi, "A", "Ab")),
             max_entangled("C0b", "B0b", dk_rest));
  MatrixXcd w = construct_uhlmann_decoder(stage3, final_target, {"B0a", "A2", "B"});
  auto [ly4, vec4] = apply_on(stage3, {"B0a", "A2", "B"}, w,
                              final_target.layout().restricted({"Ab", "B"}));
  PureStateVector final_state(std::move(ly4), std::move(vec4));
  out.per_stage.push_back(format_stage(
      "stage4: sent %d qubits, Bob decoded; norm drift %.3g", q_budget,
      std::abs(final_state.amplitudes().norm() - 1.0)));

  out.qubits_physically_sent = q_budget;
  out.ebits_returned = initial_ebits - m;
  out.final_fidelity = amplitude * overlap(final_target, final_state);
  out.per_stage.push_back(format_stage("stage4: final fidelity %.12g (target %.12g)",
                                       out.final_fidelity, 1.0 - eps));
  return out;
}

}  // namespace qsr
