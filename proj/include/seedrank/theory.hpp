#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "seedrank/sbm.hpp"
#include "seedrank/walk.hpp"

namespace seedrank {

// Raw recurrence values grow like (expected degree)^k. Every solver below
// stores them as per-step fractions plus an accumulated log scale:
//   A_k = exp(log_scale[k]) * a_frac[k], with a_frac[k] + b_frac[k] = 1.
// Everything downstream (Psi, centroids) only needs the fractions.

/// A_k = N (p_in A_{k-1} + p_out B_{k-1}), B_k = N (p_out A_{k-1} + p_in
/// B_{k-1}), A_0 = 1, B_0 = 0, for k = 0..K.
struct TwoBlockRecurrence {
  double N = 0.0;
  double p_in = 0.0;
  double p_out = 0.0;
  std::vector<double> a_frac;
  std::vector<double> b_frac;
  std::vector<double> log_scale;

  int K() const { return static_cast<int>(a_frac.size()) - 1; }
  double A(int k) const;
  double B(int k) const;
};

TwoBlockRecurrence solve_two_block_iterative(double p_in, double p_out,
                                             double N, int K);

/// Closed form through lambda_1 = N (p_in - p_out), lambda_2 = N (p_in +
/// p_out): A_k = (lambda_1^k + lambda_2^k) / 2, B_k = (lambda_2^k -
/// lambda_1^k) / 2. Fractions are evaluated with expm1/log1p so that
/// (1 -+ rho^k) keeps full relative precision as rho -> 1.
TwoBlockRecurrence solve_two_block_closed(double p_in, double p_out, double N,
                                          int K);

struct TheorySolution {
  std::vector<double> psi;  // Psi_1..Psi_K
  std::optional<double> alpha_star;
  std::vector<double> centroid_a;  // a_1..a_K
  std::vector<double> centroid_b;
  double homogeneity_violation = 0.0;
};

/// Psi_k = (A_k - B_k) / (N (A_k + B_k)) = rho^k / N with
/// rho = alpha* = (p_in - p_out) / (p_in + p_out).
TheorySolution psi_two_block(double p_in, double p_out, double N, int K);

/// Matrix driving the C-block recurrence x_k = R x_{k-1}, R_ij = n_i q_ij,
/// where q_ij is the probability that a node of block j links to a given
/// node of block i along the walk direction: q = P for undirected models and
/// q = P^T for directed ones (walks follow out-edges, P_ij is the
/// probability of an arc from block i to block j).
Eigen::MatrixXd recurrence_matrix(const SbmParams& params);

struct CBlockRecurrence {
  SbmParams params;
  int seed_block = 0;
  Eigen::MatrixXd frac;  // C x (K+1), columns sum to 1 (or all zero)
  std::vector<double> log_scale;
  std::vector<std::string> warnings;

  int K() const { return static_cast<int>(frac.cols()) - 1; }
};

/// x_{ik} = sum_j R_ij x_{j,k-1} from x_0 = e_seed. Zero entries of P are
/// allowed and produce a warning: the concentration results assume p_ij > 0.
CBlockRecurrence solve_c_block(const SbmParams& params, int seed_block, int K);

struct HomogeneityReport {
  Eigen::Matrix2d d;  // d(I, J) = sum_{i in I} R_ij for j in J, averaged over J
  double violation = 0.0;
  bool holds = false;
};

/// Checks that every node of J has the same expected number of links from I
/// for I, J in {S, T}. Holds when the violation is <= 1e-9.
HomogeneityReport check_homogeneity(const SbmParams& params,
                                    const ClassSplit& split);

/// Diagonalization of [[d11, d12], [d21, d22]] with
/// phi = sqrt((d11 - d22)^2 + 4 d12 d21), lambda_{1,2} = (d11 + d22 -+ phi)/2.
struct EigenSolution {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  Eigen::Matrix2d U;  // eigenvectors in columns
  double phi = 0.0;
};

/// Returns nullopt when the closed form does not apply: phi ~ 0 (defective
/// or repeated eigenvalue), phi imaginary, or both off-diagonals zero.
std::optional<EigenSolution> eigen_solution(const Eigen::Matrix2d& d);

struct AggregateRecurrence {
  Eigen::Matrix2d d;
  std::vector<double> f_frac;
  std::vector<double> g_frac;
  std::vector<double> log_scale;
  std::optional<EigenSolution> eigen;  // empty when iteration was used

  int K() const { return static_cast<int>(f_frac.size()) - 1; }
};

/// (f_k, g_k)^T = d (f_{k-1}, g_{k-1})^T evaluated through the eigen
/// decomposition, falling back to direct iteration when it is unavailable.
AggregateRecurrence solve_aggregate(const Eigen::Matrix2d& d, double f0,
                                    double g0, int K);
AggregateRecurrence solve_aggregate_iterative(const Eigen::Matrix2d& d,
                                              double f0, double g0, int K);

/// Psi_k = (f_k / n_S - g_k / n_T) / (f_k + g_k) with f_k, g_k the in/out
/// class sums of x_{.k}. alpha* = (p_in - p_out) / (C p_out + p_in - p_out)
/// is reported only for identically distributed blocks.
TheorySolution psi_c_block(const CBlockRecurrence& recurrence,
                           const ClassSplit& split, double n_S, double n_T);

/// Convenience: recurrence + Psi + homogeneity for a seed block and split.
TheorySolution theory_for(const SbmParams& params, const ClassSplit& split,
                          int seed_block, int K);

}  // namespace seedrank
