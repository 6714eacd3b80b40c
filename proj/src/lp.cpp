#include "slabmix/lp.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "slabmix/csv.hpp"

namespace slabmix {
namespace {

// Per-(direction, cell) coefficients of the coupled diamond-difference
// update for one marching orientation. With u_i = p_i Psi_i and
// h_i = (Sigma_ti + eta|mu|/lambda_i)/2, g_i = eta|mu|/(2 lambda_i),
// the 2x2 system per cell is
//   [a + h1, -g2; -g1, a + h2] [u1_out; u2_out] = [rhs1; rhs2],
//   rhs_i = E_i/2 + (a - h_i) u_i_in + g_j u_j_in,      a = |mu|/dx.
// The inverse is precomputed; b_i = a - h_i.
struct LPHalfSweep {
  Eigen::ArrayXd mu_abs;
  Eigen::ArrayXd weight;
  Eigen::ArrayXd g1, g2;                  // per direction
  Eigen::ArrayXXd b1, b2;                 // (directions, cells)
  Eigen::ArrayXXd q11, q12, q21, q22;     // inverse entries / det
};

LPHalfSweep make_lp_half(const LPProblem& problem, const Mesh& mesh,
                         const Eigen::ArrayXd& mu_abs,
                         const Eigen::ArrayXd& weight) {
  LPHalfSweep half;
  half.mu_abs = mu_abs;
  half.weight = weight;
  const int h = static_cast<int>(mu_abs.size());
  const int n = mesh.n_cells();
  const double eta = problem.eta;
  const double l1 = problem.stats.lambda1;
  const double l2 = problem.stats.lambda2;

  half.g1 = eta * mu_abs / (2.0 * l1);
  half.g2 = eta * mu_abs / (2.0 * l2);
  const Eigen::ArrayXd h1 = 0.5 * problem.m1.sigma_t + half.g1;
  const Eigen::ArrayXd h2 = 0.5 * problem.m2.sigma_t + half.g2;

  const Eigen::ArrayXd widths = mesh.widths();
  half.b1.resize(h, n);
  half.b2.resize(h, n);
  half.q11.resize(h, n);
  half.q12.resize(h, n);
  half.q21.resize(h, n);
  half.q22.resize(h, n);
  for (int j = 0; j < n; ++j) {
    const Eigen::ArrayXd a = mu_abs / widths[j];
    const Eigen::ArrayXd a11 = a + h1;
    const Eigen::ArrayXd a22 = a + h2;
    const Eigen::ArrayXd det = a11 * a22 - half.g1 * half.g2;
    if ((det <= 0.0).any()) {
      throw std::runtime_error("lp_sweep: singular 2x2 cell block (cell " +
                               std::to_string(j) + ")");
    }
    half.b1.col(j) = a - h1;
    half.b2.col(j) = a - h2;
    half.q11.col(j) = a22 / det;
    half.q12.col(j) = half.g2 / det;
    half.q21.col(j) = half.g1 / det;
    half.q22.col(j) = a11 / det;
  }
  return half;
}

struct LPWorkspace {
  LPHalfSweep neg, pos;
  int h = 0;
  Eigen::ArrayXd in1, in2, out1, out2, c1, c2, rhs1, rhs2;

  LPWorkspace(const LPProblem& problem, const Mesh& mesh,
              const Quadrature& quad) {
    const int n_dirs = quad.order();
    h = n_dirs / 2;
    const Eigen::ArrayXd mu = quad.mu.array();
    const Eigen::ArrayXd w = quad.w.array();
    neg = make_lp_half(problem, mesh, (-mu.head(h)).eval(), w.head(h).eval());
    pos = make_lp_half(problem, mesh, mu.tail(h).eval(), w.tail(h).eval());
    for (Eigen::ArrayXd* a :
         {&in1, &in2, &out1, &out2, &c1, &c2, &rhs1, &rhs2}) {
      a->resize(h);
    }
  }
};

struct LPSweepOutputs {
  Eigen::ArrayXd* wphi1 = nullptr;  // integral of u_1 = p1 Psi1 over mu
  Eigen::ArrayXd* wphi2 = nullptr;
  Eigen::MatrixXd* u1 = nullptr;    // optional cell-centered u_i storage
  Eigen::MatrixXd* u2 = nullptr;
  long* negative_count = nullptr;
  double outflow_left = 0.0;   // combined u1 + u2 outgoing partial current
  double outflow_right = 0.0;
};

void run_lp_sweep(LPWorkspace& ws, const Mesh& mesh,
                  const Eigen::ArrayXd& emission1,
                  const Eigen::ArrayXd& emission2, LPSweepOutputs& outp) {
  const int n = mesh.n_cells();
  const int h = ws.h;

  auto march = [&](const LPHalfSweep& half, bool forward) {
    ws.in1.setZero();
    ws.in2.setZero();
    for (int k = 0; k < n; ++k) {
      const int j = forward ? k : n - 1 - k;
      ws.rhs1 = 0.5 * emission1[j] + half.b1.col(j) * ws.in1 + half.g2 * ws.in2;
      ws.rhs2 = 0.5 * emission2[j] + half.b2.col(j) * ws.in2 + half.g1 * ws.in1;
      ws.out1 = half.q11.col(j) * ws.rhs1 + half.q12.col(j) * ws.rhs2;
      ws.out2 = half.q21.col(j) * ws.rhs1 + half.q22.col(j) * ws.rhs2;
      ws.c1 = 0.5 * (ws.in1 + ws.out1);
      ws.c2 = 0.5 * (ws.in2 + ws.out2);
      if (forward) {
        (*outp.wphi1)[j] = (half.weight * ws.c1).sum();
        (*outp.wphi2)[j] = (half.weight * ws.c2).sum();
      } else {
        (*outp.wphi1)[j] += (half.weight * ws.c1).sum();
        (*outp.wphi2)[j] += (half.weight * ws.c2).sum();
      }
      if (outp.u1) {
        auto rows = forward ? Eigen::seq(h, 2 * h - 1) : Eigen::seq(0, h - 1);
        outp.u1->col(j)(rows) = ws.c1.matrix();
        outp.u2->col(j)(rows) = ws.c2.matrix();
      }
      if (outp.negative_count) {
        *outp.negative_count += (ws.c1 < 0.0).count() + (ws.c2 < 0.0).count();
      }
      ws.in1.swap(ws.out1);
      ws.in2.swap(ws.out2);
    }
    return (half.weight * half.mu_abs * (ws.in1 + ws.in2)).sum();
  };

  outp.outflow_right = march(ws.pos, true);
  outp.outflow_left = march(ws.neg, false);
}

Mesh lp_mesh(const LPProblem& problem) {
  const AveragedSpec avg =
      volume_average(problem.m1, problem.m2, problem.stats);
  return build_mesh(avg, problem.half_width, problem.dx_max);
}

}  // namespace

LPNonConvergenceError::LPNonConvergenceError(const std::string& what,
                                             LPSolution last_iterate,
                                             std::vector<double> history)
    : std::runtime_error(what),
      last_iterate_(std::move(last_iterate)),
      history_(std::move(history)) {}

LPSweepResult lp_sweep(const LPProblem& problem, const Mesh& mesh,
                       const Quadrature& quad, const Eigen::ArrayXd& emission1,
                       const Eigen::ArrayXd& emission2) {
  LPWorkspace ws(problem, mesh, quad);
  const int n = mesh.n_cells();

  LPSweepResult result;
  result.weighted_phi1.resize(n);
  result.weighted_phi2.resize(n);
  Eigen::MatrixXd u1(quad.order(), n), u2(quad.order(), n);

  LPSweepOutputs outp;
  outp.wphi1 = &result.weighted_phi1;
  outp.wphi2 = &result.weighted_phi2;
  outp.u1 = &u1;
  outp.u2 = &u2;
  outp.negative_count = &result.negative_count;
  run_lp_sweep(ws, mesh, emission1, emission2, outp);

  result.psi1 = u1 / problem.stats.p1();
  result.psi2 = u2 / problem.stats.p2();
  result.outflow_left = outp.outflow_left;
  result.outflow_right = outp.outflow_right;
  return result;
}

LPSolution solve_lp(const LPProblem& problem, const SolveOptions& opts) {
  if (problem.eta < 0.0) {
    throw std::invalid_argument("solve_lp: eta must be nonnegative");
  }
  const Mesh mesh = lp_mesh(problem);
  const Quadrature quad = gauss_legendre(problem.quad_n);
  LPWorkspace ws(problem, mesh, quad);

  const int n = mesh.n_cells();
  const double p1 = problem.stats.p1();
  const double p2 = problem.stats.p2();
  const Eigen::ArrayXd widths = mesh.widths();
  const double source_total =
      (p1 * problem.m1.q + p2 * problem.m2.q) * 2.0 * problem.half_width;
  const bool has_scattering =
      problem.m1.sigma_s > 0.0 || problem.m2.sigma_s > 0.0;

  Eigen::ArrayXd wphi1 = Eigen::ArrayXd::Zero(n);
  Eigen::ArrayXd wphi2 = Eigen::ArrayXd::Zero(n);
  Eigen::ArrayXd wphi1_new(n), wphi2_new(n);
  Eigen::ArrayXd emission1(n), emission2(n);
  std::vector<double> history;

  LPSweepOutputs outp;
  outp.wphi1 = &wphi1_new;
  outp.wphi2 = &wphi2_new;

  long iterations = 0;
  double change = 0.0;
  double balance = 0.0;
  bool converged = false;
  while (iterations < opts.max_iters) {
    ++iterations;
    emission1 = problem.m1.sigma_s * wphi1 + p1 * problem.m1.q;
    emission2 = problem.m2.sigma_s * wphi2 + p2 * problem.m2.q;
    run_lp_sweep(ws, mesh, emission1, emission2, outp);

    const double change1 =
        ((wphi1_new - wphi1).abs() / wphi1_new.abs().max(1e-300)).maxCoeff();
    const double change2 =
        ((wphi2_new - wphi2).abs() / wphi2_new.abs().max(1e-300)).maxCoeff();
    change = std::max(change1, change2);
    const double lag = (problem.m1.sigma_s * (wphi1_new - wphi1) * widths +
                        problem.m2.sigma_s * (wphi2_new - wphi2) * widths)
                           .sum();
    balance = (source_total > 0.0) ? std::abs(lag) / source_total : 0.0;
    history.push_back(change);
    wphi1.swap(wphi1_new);
    wphi2.swap(wphi2_new);

    if (!has_scattering || (change <= opts.tol && balance <= opts.tol)) {
      converged = true;
      break;
    }
  }

  // Replay the last emission for angular storage and boundary currents.
  Eigen::MatrixXd u1(quad.order(), n), u2(quad.order(), n);
  long negatives = 0;
  outp.u1 = &u1;
  outp.u2 = &u2;
  outp.negative_count = &negatives;
  run_lp_sweep(ws, mesh, emission1, emission2, outp);

  LPSolution sol;
  sol.mesh = mesh;
  sol.mean_scalar_flux = wphi1_new + wphi2_new;
  sol.phi1 = wphi1_new / p1;
  sol.phi2 = wphi2_new / p2;
  sol.psi1 = u1 / p1;
  sol.psi2 = u2 / p2;
  sol.eta = problem.eta;
  sol.eta_from_rule = problem.eta_from_rule;
  sol.info.iterations = iterations;
  sol.info.residual = change;
  sol.info.negative_angular_fluxes = negatives;
  sol.info.outflow_left = outp.outflow_left;
  sol.info.outflow_right = outp.outflow_right;
  const double absorption = (problem.m1.sigma_a() * wphi1_new * widths +
                             problem.m2.sigma_a() * wphi2_new * widths)
                                .sum();
  sol.info.balance_residual =
      (source_total > 0.0)
          ? std::abs(absorption + outp.outflow_left + outp.outflow_right -
                     source_total) /
                source_total
          : 0.0;

  if (!converged) {
    throw LPNonConvergenceError(
        "solve_lp: no convergence after " + std::to_string(iterations) +
            " iterations (change " + std::to_string(change) + ")",
        std::move(sol), std::move(history));
  }
  return sol;
}

double lp_flux_at_origin(const LPSolution& sol) {
  return flux_at_origin(sol.mesh, sol.mean_scalar_flux);
}

void write_lp_csv(std::ostream& os, const LPSolution& sol) {
  os << "x,mean_scalar_flux_" << (sol.eta_from_rule ? "alp" : "lp")
     << "[eta=" << fmt17(sol.eta)
     << ";source=" << (sol.eta_from_rule ? "eta-rule" : "fixed") << "],phi1,phi2\n";
  const Eigen::ArrayXd centers = sol.mesh.centers();
  for (int i = 0; i < sol.mesh.n_cells(); ++i) {
    os << fmt17(centers[i]) << ',' << fmt17(sol.mean_scalar_flux[i]) << ','
       << fmt17(sol.phi1[i]) << ',' << fmt17(sol.phi2[i]) << "\n";
  }
}

}  // namespace slabmix
