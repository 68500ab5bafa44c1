#include "cqa/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cqa/errors.hpp"

namespace cqa {

namespace {

// Four accumulators so the FP adds pipeline; fixed order keeps runs bit-identical.
double dot(const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double norm2(const double* a, std::size_t n) { return std::sqrt(dot(a, a, n)); }

void scale(double alpha, double* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= alpha;
}

// Krylov basis in one contiguous buffer, grown geometrically.
class Basis {
  public:
    explicit Basis(std::size_t dim) : dim_(dim) {}
    std::size_t size() const { return count_; }
    const double* vec(std::size_t i) const { return data_.data() + i * dim_; }
    double* push() {
        const std::size_t needed = (count_ + 1) * dim_;
        if (data_.capacity() < needed) data_.reserve(std::max(needed, 2 * data_.capacity()));
        data_.resize(needed);
        return data_.data() + (count_++) * dim_;
    }

  private:
    std::size_t dim_;
    std::size_t count_ = 0;
    std::vector<double> data_;
};

void fill_random_unit(std::mt19937_64& rng, std::span<double> v) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto& x : v) x = dist(rng);
    double n = norm2(v.data(), v.size());
    scale(1.0 / n, v.data(), v.size());
}

// One classical Gram-Schmidt sweep against the whole basis; the coefficient
// against vector `m-1` is returned so the caller can fold it into alpha.
double sweep_project(const Basis& basis, double* w, std::size_t dim) {
    double last = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const double c = dot(basis.vec(i), w, dim);
        axpy(-c, basis.vec(i), w, dim);
        if (i + 1 == basis.size()) last = c;
    }
    return last;
}

// How often to run the (m^2-ish) Ritz convergence check.
int check_interval(std::size_t m) {
    if (m <= 48) return 1;
    if (m <= 128) return 2;
    return 4;
}

struct RitzPairs {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    std::vector<double> residuals;
    int iterations = 0;
};

void make_sign_canonical(std::vector<double>& v) {
    std::size_t imax = 0;
    double amax = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double a = std::abs(v[i]);
        if (a > amax) {
            amax = a;
            imax = i;
        }
    }
    if (v[imax] < 0.0)
        for (auto& x : v) x = -x;
}

// Lanczos on the three-term recurrence. With full reorthogonalization each new
// direction is swept against the entire stored basis (repeated once when the
// sweep cancels substantially), so the projected matrix stays tridiagonal to
// machine precision; a deflation restart (taken on breakdown, which is how
// degenerate multiplets get their extra copies) contributes a zero coupling.
// Ritz pairs are accepted only after an explicit residual check.
RitzPairs lanczos_lowest(const MatVec& apply, std::uint64_t dim, int k, const SolverConfig& cfg) {
    if (dim == 0) throw std::invalid_argument("operator dimension must be >= 1");
    if (k < 1 || static_cast<std::uint64_t>(k) > dim) throw std::invalid_argument("k out of range");
    if (cfg.tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");
    if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");

    const std::size_t n = static_cast<std::size_t>(dim);
    const std::size_t cap = std::min<std::size_t>(static_cast<std::size_t>(cfg.max_iterations), n);
    const bool full_reorth = cfg.reorthogonalization == Reorthogonalization::full;

    std::mt19937_64 rng(cfg.seed);
    Basis basis(n);

    {
        double* v0 = basis.push();
        bool seeded = false;
        if (!cfg.warm_start.empty()) {
            if (cfg.warm_start.size() != n)
                throw std::invalid_argument("warm_start length does not match dim");
            double nrm = norm2(cfg.warm_start.data(), n);
            if (std::isfinite(nrm) && nrm > 1e-300) {
                for (std::size_t i = 0; i < n; ++i) v0[i] = cfg.warm_start[i] / nrm;
                seeded = true;
            }
        }
        if (!seeded) fill_random_unit(rng, {v0, n});
    }

    std::vector<double> alpha, beta;  // beta[i] couples vectors i and i+1
    alpha.reserve(cap);
    beta.reserve(cap);
    std::vector<double> w(n);
    double best_bound = std::numeric_limits<double>::infinity();
    double scale_est = 0.0;
    int iterations = 0;
    int since_check = 0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;

    auto assemble = [&](const Eigen::MatrixXd& y, int col) {
        std::vector<double> x(n, 0.0);
        for (std::size_t i = 0; i < basis.size(); ++i) axpy(y(i, col), basis.vec(i), x.data(), n);
        double nrm = norm2(x.data(), n);
        scale(1.0 / nrm, x.data(), n);
        return x;
    };

    while (true) {
        const std::size_t m = basis.size();
        iterations = static_cast<int>(m);
        apply({basis.vec(m - 1), n}, {w.data(), n});

        double a = dot(basis.vec(m - 1), w.data(), n);
        axpy(-a, basis.vec(m - 1), w.data(), n);
        if (m >= 2 && beta[m - 2] != 0.0) axpy(-beta[m - 2], basis.vec(m - 2), w.data(), n);
        if (full_reorth) {
            const double before = norm2(w.data(), n);
            a += sweep_project(basis, w.data(), n);
            const double after = norm2(w.data(), n);
            // The sweep removes only roundoff-sized components; a large drop
            // signals cancellation, so sweep once more.
            if (after < 0.7071 * before) a += sweep_project(basis, w.data(), n);
        }
        if (!std::isfinite(a)) throw NonFiniteError("non-finite value in Krylov recurrence");
        alpha.push_back(a);
        const double beta_val = norm2(w.data(), n);
        if (!std::isfinite(beta_val)) throw NonFiniteError("non-finite Krylov vector norm");

        scale_est = std::max(scale_est, std::abs(a) + (m >= 2 ? std::abs(beta[m - 2]) : 0.0) +
                                            beta_val);
        const double breakdown = std::max(1e-300, 1e-14 * std::max(scale_est, 1.0));

        const bool force_check = (m == n) || (m >= cap) || (beta_val <= breakdown);
        const bool do_check = force_check || (++since_check >= check_interval(m));
        const bool have_k = m >= static_cast<std::size_t>(k);

        if (do_check && have_k) {
            since_check = 0;
            es.computeFromTridiagonal(
                Eigen::Map<const Eigen::VectorXd>(alpha.data(), m),
                Eigen::Map<const Eigen::VectorXd>(beta.data(), m >= 1 ? m - 1 : 0),
                Eigen::ComputeEigenvectors);
            const auto& theta = es.eigenvalues();
            const auto& y = es.eigenvectors();

            double worst = 0.0;
            for (int i = 0; i < k; ++i) worst = std::max(worst, beta_val * std::abs(y(m - 1, i)));
            best_bound = std::min(best_bound, worst);

            // A breakdown before the space is exhausted may hide degenerate
            // copies of the k-th value; for k > 1 deflate first, accept later.
            const bool multiplicity_safe = k == 1 || beta_val > breakdown || m == n;
            if ((worst <= cfg.tolerance && multiplicity_safe) || m == n) {
                RitzPairs out;
                out.iterations = iterations;
                bool certified = true;
                std::vector<double> r(n);
                for (int i = 0; i < k; ++i) {
                    auto x = assemble(y, i);
                    apply({x.data(), n}, {r.data(), n});
                    axpy(-theta(i), x.data(), r.data(), n);
                    const double res = norm2(r.data(), n);
                    if (!std::isfinite(res)) throw NonFiniteError("non-finite residual");
                    if (res > cfg.tolerance) {
                        certified = false;
                        best_bound = std::min(best_bound, res);
                        break;
                    }
                    out.values.push_back(theta(i));
                    out.vectors.push_back(std::move(x));
                    out.residuals.push_back(res);
                }
                if (certified) {
                    for (auto& v : out.vectors) make_sign_canonical(v);
                    return out;
                }
                if (m == n) throw NotConvergedError(iterations, best_bound);
            }
        }

        if (m >= cap) throw NotConvergedError(iterations, best_bound);

        if (beta_val <= breakdown) {
            // Invariant subspace: restart with a random direction orthogonal
            // to everything found so far.
            bool replaced = false;
            for (int attempt = 0; attempt < 8 && !replaced; ++attempt) {
                fill_random_unit(rng, {w.data(), n});
                sweep_project(basis, w.data(), n);
                sweep_project(basis, w.data(), n);
                const double nrm = norm2(w.data(), n);
                if (nrm > 1e-8) {
                    scale(1.0 / nrm, w.data(), n);
                    replaced = true;
                }
            }
            if (!replaced) throw NotConvergedError(iterations, best_bound);
            double* next = basis.push();
            std::copy(w.begin(), w.end(), next);
            beta.push_back(0.0);
        } else {
            double* next = basis.push();
            for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / beta_val;
            beta.push_back(beta_val);
        }
    }
}

}  // namespace

GroundState ground_state(const MatVec& apply, std::uint64_t dim, const SolverConfig& cfg) {
    auto pairs = lanczos_lowest(apply, dim, 1, cfg);
    GroundState gs;
    gs.energy = pairs.values[0];
    gs.amplitudes = std::move(pairs.vectors[0]);
    gs.residual = pairs.residuals[0];
    gs.iterations = pairs.iterations;
    return gs;
}

std::vector<double> low_spectrum(const MatVec& apply, std::uint64_t dim, int k,
                                 const SolverConfig& cfg) {
    if (k < 1 || k > 8) throw std::invalid_argument("low_spectrum supports 1 <= k <= 8");
    auto pairs = lanczos_lowest(apply, dim, k, cfg);
    return pairs.values;
}

GroundState dense_ground_state(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols()) throw std::invalid_argument("matrix must be square");
    if (matrix.rows() > 4096) throw std::invalid_argument("dense solver limited to dim <= 4096");
    if (matrix.rows() == 0) throw std::invalid_argument("matrix must be nonempty");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix);
    GroundState gs;
    gs.energy = es.eigenvalues()(0);
    Eigen::VectorXd v = es.eigenvectors().col(0);
    gs.amplitudes.assign(v.data(), v.data() + v.size());
    make_sign_canonical(gs.amplitudes);
    Eigen::Map<const Eigen::VectorXd> x(gs.amplitudes.data(), gs.amplitudes.size());
    gs.residual = (matrix * x - gs.energy * x).norm();
    gs.iterations = 0;
    return gs;
}

}  // namespace cqa
