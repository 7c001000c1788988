#include "seedrank/theory.hpp"

#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "seedrank/errors.hpp"

namespace seedrank {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_two_block_args(double p_in, double p_out, double N, int K) {
  if (!(p_in >= 0.0 && p_out >= 0.0 && p_in + p_out > 0.0)) {
    throw ValidationError(
        "two-block recurrence: need p_in, p_out >= 0 and p_in + p_out > 0");
  }
  if (!(N >= 1.0)) throw ValidationError("two-block recurrence: N must be >= 1");
  if (K < 1) throw ValidationError("two-block recurrence: K must be >= 1");
}

TwoBlockRecurrence empty_two_block(double p_in, double p_out, double N, int K) {
  TwoBlockRecurrence rec{N, p_in, p_out, {}, {}, {}};
  rec.a_frac.reserve(K + 1);
  rec.b_frac.reserve(K + 1);
  rec.log_scale.reserve(K + 1);
  rec.a_frac.push_back(1.0);
  rec.b_frac.push_back(0.0);
  rec.log_scale.push_back(0.0);
  return rec;
}

bool nearly_equal(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

double TwoBlockRecurrence::A(int k) const {
  return std::exp(log_scale.at(k)) * a_frac.at(k);
}

double TwoBlockRecurrence::B(int k) const {
  return std::exp(log_scale.at(k)) * b_frac.at(k);
}

TwoBlockRecurrence solve_two_block_iterative(double p_in, double p_out,
                                             double N, int K) {
  check_two_block_args(p_in, p_out, N, K);
  auto rec = empty_two_block(p_in, p_out, N, K);
  double a = 1.0;
  double b = 0.0;
  double log_scale = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double next_a = N * (p_in * a + p_out * b);
    const double next_b = N * (p_out * a + p_in * b);
    const double total = next_a + next_b;
    log_scale += std::log(total);
    a = next_a / total;
    b = next_b / total;
    rec.a_frac.push_back(a);
    rec.b_frac.push_back(b);
    rec.log_scale.push_back(log_scale);
  }
  return rec;
}

TwoBlockRecurrence solve_two_block_closed(double p_in, double p_out, double N,
                                          int K) {
  check_two_block_args(p_in, p_out, N, K);
  auto rec = empty_two_block(p_in, p_out, N, K);
  const double sum = p_in + p_out;
  const bool negative = p_in < p_out;
  // |rho| = 1 - 2 min(p_in, p_out) / (p_in + p_out)
  const double log_abs_rho = std::log1p(-2.0 * std::min(p_in, p_out) / sum);
  const double log_lambda2 = std::log(N * sum);
  for (int k = 1; k <= K; ++k) {
    const double kd = static_cast<double>(k);
    const double abs_pow = std::exp(kd * log_abs_rho);
    const double one_minus = -std::expm1(kd * log_abs_rho);  // 1 - |rho|^k
    const bool pow_negative = negative && (k % 2 == 1);
    // A_k / lambda_2^k = (1 + rho^k) / 2, B_k / lambda_2^k = (1 - rho^k) / 2
    const double a = 0.5 * (pow_negative ? one_minus : 1.0 + abs_pow);
    const double b = 0.5 * (pow_negative ? 1.0 + abs_pow : one_minus);
    rec.a_frac.push_back(a);
    rec.b_frac.push_back(b);
    rec.log_scale.push_back(kd * log_lambda2);
  }
  return rec;
}

TheorySolution psi_two_block(double p_in, double p_out, double N, int K) {
  const auto rec = solve_two_block_closed(p_in, p_out, N, K);
  TheorySolution sol;
  sol.alpha_star = (p_in - p_out) / (p_in + p_out);
  for (int k = 1; k <= K; ++k) {
    sol.psi.push_back((rec.a_frac[k] - rec.b_frac[k]) / N);
    sol.centroid_a.push_back(rec.a_frac[k] / N);
    sol.centroid_b.push_back(rec.b_frac[k] / N);
  }
  return sol;
}

Eigen::MatrixXd recurrence_matrix(const SbmParams& params) {
  params.validate();
  const auto sizes = params.block_sizes();
  const Eigen::MatrixXd q =
      params.directed ? Eigen::MatrixXd(params.P.transpose()) : params.P;
  Eigen::MatrixXd R(q.rows(), q.cols());
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    R.row(i) = static_cast<double>(sizes[i]) * q.row(i);
  }
  return R;
}

CBlockRecurrence solve_c_block(const SbmParams& params, int seed_block,
                               int K) {
  if (seed_block < 0 || seed_block >= params.num_blocks()) {
    throw ValidationError("C-block recurrence: seed block out of range");
  }
  if (K < 1) throw ValidationError("C-block recurrence: K must be >= 1");
  const Eigen::MatrixXd R = recurrence_matrix(params);
  const Eigen::Index c = R.rows();

  CBlockRecurrence rec;
  rec.params = params;
  rec.seed_block = seed_block;
  if ((params.P.array() <= 0.0).any()) {
    rec.warnings.emplace_back(
        "P has zero entries; the concentration guarantees assume p_ij > 0");
  }
  rec.frac = Eigen::MatrixXd::Zero(c, K + 1);
  rec.frac(seed_block, 0) = 1.0;
  rec.log_scale.assign(static_cast<std::size_t>(K) + 1, 0.0);
  Eigen::VectorXd x = rec.frac.col(0);
  double log_scale = 0.0;
  for (int k = 1; k <= K; ++k) {
    Eigen::VectorXd next = R * x;
    const double total = next.sum();
    if (!(total > 0.0)) {
      // Walk mass vanished; later columns stay zero.
      for (int j = k; j <= K; ++j) rec.log_scale[j] = kNegInf;
      break;
    }
    log_scale += std::log(total);
    x = next / total;
    rec.frac.col(k) = x;
    rec.log_scale[k] = log_scale;
  }
  return rec;
}

HomogeneityReport check_homogeneity(const SbmParams& params,
                                    const ClassSplit& split) {
  split.validate(params.num_blocks());
  const Eigen::MatrixXd R = recurrence_matrix(params);
  const std::vector<int>* sides[2] = {&split.in_blocks, &split.out_blocks};
  HomogeneityReport report;
  for (int I = 0; I < 2; ++I) {
    for (int J = 0; J < 2; ++J) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      double total = 0.0;
      for (int j : *sides[J]) {
        double column = 0.0;
        for (int i : *sides[I]) column += R(i, j);
        lo = std::min(lo, column);
        hi = std::max(hi, column);
        total += column;
      }
      report.d(I, J) = total / static_cast<double>(sides[J]->size());
      report.violation = std::max(report.violation, hi - lo);
    }
  }
  report.holds = report.violation <= 1e-9;
  return report;
}

std::optional<EigenSolution> eigen_solution(const Eigen::Matrix2d& d) {
  const double d11 = d(0, 0), d12 = d(0, 1), d21 = d(1, 0), d22 = d(1, 1);
  const double disc = (d11 - d22) * (d11 - d22) + 4.0 * d12 * d21;
  if (!(disc >= 0.0)) return std::nullopt;
  const double phi = std::sqrt(disc);
  const double scale = d.cwiseAbs().sum();
  if (!(phi > 1e-6 * scale)) return std::nullopt;

  EigenSolution sol;
  sol.phi = phi;
  sol.lambda1 = 0.5 * (d11 + d22 - phi);
  sol.lambda2 = 0.5 * (d11 + d22 + phi);
  if (d21 != 0.0 && std::abs(d21) >= std::abs(d12)) {
    // Second row of d v = lambda v with v = (u, 1).
    sol.U << (d11 - d22 - phi) / (2.0 * d21), (d11 - d22 + phi) / (2.0 * d21),
        1.0, 1.0;
  } else if (d12 != 0.0) {
    // First row with v = (1, w).
    sol.U << 1.0, 1.0, (d22 - d11 - phi) / (2.0 * d12),
        (d22 - d11 + phi) / (2.0 * d12);
  } else if (d11 < d22) {
    sol.U.setIdentity();
  } else {
    sol.U << 0.0, 1.0, 1.0, 0.0;
  }
  return sol;
}

AggregateRecurrence solve_aggregate_iterative(const Eigen::Matrix2d& d,
                                              double f0, double g0, int K) {
  if ((d.array() < 0.0).any()) {
    throw ValidationError("aggregate recurrence: d_IJ must be >= 0");
  }
  if (!(f0 >= 0.0 && g0 >= 0.0 && f0 + g0 > 0.0)) {
    throw ValidationError("aggregate recurrence: need f0, g0 >= 0, f0 + g0 > 0");
  }
  if (K < 1) throw ValidationError("aggregate recurrence: K must be >= 1");
  AggregateRecurrence rec;
  rec.d = d;
  const double total0 = f0 + g0;
  Eigen::Vector2d x(f0 / total0, g0 / total0);
  double log_scale = std::log(total0);
  rec.f_frac.push_back(x[0]);
  rec.g_frac.push_back(x[1]);
  rec.log_scale.push_back(log_scale);
  for (int k = 1; k <= K; ++k) {
    Eigen::Vector2d next = d * x;
    const double total = next.sum();
    if (!(total > 0.0)) {
      rec.f_frac.push_back(0.0);
      rec.g_frac.push_back(0.0);
      rec.log_scale.push_back(kNegInf);
      x.setZero();
      continue;
    }
    log_scale += std::log(total);
    x = next / total;
    rec.f_frac.push_back(x[0]);
    rec.g_frac.push_back(x[1]);
    rec.log_scale.push_back(log_scale);
  }
  return rec;
}

AggregateRecurrence solve_aggregate(const Eigen::Matrix2d& d, double f0,
                                    double g0, int K) {
  auto eig = eigen_solution(d);
  if (!eig) return solve_aggregate_iterative(d, f0, g0, K);
  if ((d.array() < 0.0).any()) {
    throw ValidationError("aggregate recurrence: d_IJ must be >= 0");
  }
  if (!(f0 >= 0.0 && g0 >= 0.0 && f0 + g0 > 0.0)) {
    throw ValidationError("aggregate recurrence: need f0, g0 >= 0, f0 + g0 > 0");
  }
  if (K < 1) throw ValidationError("aggregate recurrence: K must be >= 1");

  AggregateRecurrence rec;
  rec.d = d;
  rec.eigen = eig;
  const Eigen::Matrix2d& U = eig->U;
  const Eigen::Vector2d coeff = U.inverse() * Eigen::Vector2d(f0, g0);
  const double top =
      std::max(std::abs(eig->lambda1), std::abs(eig->lambda2));
  const double r1 = eig->lambda1 / top;
  const double r2 = eig->lambda2 / top;
  const double total0 = f0 + g0;
  rec.f_frac.push_back(f0 / total0);
  rec.g_frac.push_back(g0 / total0);
  rec.log_scale.push_back(std::log(total0));
  for (int k = 1; k <= K; ++k) {
    const double t1 = coeff[0] * std::pow(r1, k);
    const double t2 = coeff[1] * std::pow(r2, k);
    const double f = U(0, 0) * t1 + U(0, 1) * t2;
    const double g = U(1, 0) * t1 + U(1, 1) * t2;
    const double total = f + g;
    if (!(total > 0.0)) {
      rec.f_frac.push_back(0.0);
      rec.g_frac.push_back(0.0);
      rec.log_scale.push_back(kNegInf);
      continue;
    }
    rec.f_frac.push_back(f / total);
    rec.g_frac.push_back(g / total);
    rec.log_scale.push_back(static_cast<double>(k) * std::log(top) +
                            std::log(total));
  }
  return rec;
}

TheorySolution psi_c_block(const CBlockRecurrence& recurrence,
                           const ClassSplit& split, double n_S, double n_T) {
  const SbmParams& params = recurrence.params;
  split.validate(params.num_blocks());
  if (!(n_S > 0.0 && n_T > 0.0)) {
    throw ValidationError("psi: class sizes must be positive");
  }
  TheorySolution sol;
  for (int k = 1; k <= recurrence.K(); ++k) {
    double f = 0.0;
    double g = 0.0;
    for (int i : split.in_blocks) f += recurrence.frac(i, k);
    for (int i : split.out_blocks) g += recurrence.frac(i, k);
    const double total = f + g;
    if (!(total > 0.0)) {
      throw DegenerateParameterError("psi: zero total walk mass at step " +
                                     std::to_string(k));
    }
    sol.psi.push_back((f / n_S - g / n_T) / total);
    sol.centroid_a.push_back(f / (n_S * total));
    sol.centroid_b.push_back(g / (n_T * total));
  }

  // Identically distributed blocks: equal sizes, one p_in on the diagonal,
  // one p_out elsewhere.
  const int c = params.num_blocks();
  const double p_in = params.P(0, 0);
  const double p_out = c > 1 ? params.P(0, 1) : 0.0;
  bool identical = c > 1;
  for (int i = 0; i < c && identical; ++i) {
    identical = nearly_equal(params.pi[i], params.pi[0]);
    for (int j = 0; j < c && identical; ++j) {
      identical = nearly_equal(params.P(i, j), i == j ? p_in : p_out);
    }
  }
  const double denom = c * p_out + (p_in - p_out);
  if (identical && denom != 0.0) sol.alpha_star = (p_in - p_out) / denom;
  return sol;
}

TheorySolution theory_for(const SbmParams& params, const ClassSplit& split,
                          int seed_block, int K) {
  const auto rec = solve_c_block(params, seed_block, K);
  const auto sizes = params.block_sizes();
  double n_S = 0.0;
  double n_T = 0.0;
  for (int i : split.in_blocks) n_S += static_cast<double>(sizes[i]);
  for (int i : split.out_blocks) n_T += static_cast<double>(sizes[i]);
  auto sol = psi_c_block(rec, split, n_S, n_T);
  sol.homogeneity_violation = check_homogeneity(params, split).violation;
  return sol;
}

}  // namespace seedrank
