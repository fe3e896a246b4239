#include "quadop/probe.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace quadop {

namespace {

// Cyclic Jacobi on a dense symmetric matrix (row-major n x n).
// Returns eigenvalues in `evals` and eigenvectors as columns of `evecs`.
void jacobi_symmetric(std::vector<double> a, std::size_t n, std::vector<double>& evals,
                      std::vector<double>& evecs) {
    evecs.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) evecs[i * n + i] = 1.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off <= 1e-300) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a[i * n + p];
                    const double aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const double apj = a[p * n + j];
                    const double aqj = a[q * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[q * n + j] = s * apj + c * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = evecs[i * n + p];
                    const double viq = evecs[i * n + q];
                    evecs[i * n + p] = c * vip - s * viq;
                    evecs[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }
    evals.resize(n);
    for (std::size_t i = 0; i < n; ++i) evals[i] = a[i * n + i];
}

struct GapResult {
    double gap = 0.0;  // smallest singular value of v -> B(u, v)
    Vector v;          // unit right singular vector achieving it
};

// Smallest singular value of M(u) (codomain x domain) via the smallest
// eigenpair of M^T M.
GapResult singular_gap(const BilinearMap& b, const Vector& u) {
    const std::size_t n = b.domain_dim();
    const std::size_t np = b.codomain_dim();
    const std::vector<double> m = b.contract_left(u);

    std::vector<double> g(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < np; ++k) s += m[k * n + i] * m[k * n + j];
            g[i * n + j] = s;
            g[j * n + i] = s;
        }
    }

    std::vector<double> evals, evecs;
    jacobi_symmetric(std::move(g), n, evals, evecs);

    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (evals[i] < evals[best]) best = i;
    }

    GapResult out;
    out.gap = std::sqrt(std::max(0.0, evals[best]));
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = evecs[i * n + best];
    double vn = 0.0;
    for (double x : v) vn += x * x;
    vn = std::sqrt(vn);
    if (vn > 0.0) {
        for (double& x : v) x /= vn;
    }
    out.v = Vector(std::move(v));
    return out;
}

Vector normalized(Vector v) {
    const double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return v *= 1.0 / n;
}

}  // namespace

ProbeVerdict nondegeneracy_probe(const BilinearMap& b, int trials, double tol,
                                 std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("nondegeneracy_probe: trials must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("nondegeneracy_probe: tol must be positive");

    const std::size_t n = b.domain_dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    ProbeVerdict verdict;
    verdict.confidence.smallest_gap = std::numeric_limits<double>::infinity();

    auto evaluate = [&](const Vector& u) {
        ++verdict.confidence.evaluations;
        GapResult r = singular_gap(b, u);
        verdict.confidence.smallest_gap = std::min(verdict.confidence.smallest_gap, r.gap);
        return r;
    };

    // Certify a candidate by evaluating the actual bilinear map. Witness
    // verdicts are exact up to tol; the search only proposes candidates.
    auto certify = [&](const Vector& u, const GapResult& r) -> bool {
        if (r.gap > tol || r.v.dim() != n || r.v.is_zero()) return false;
        const Vector w = b.eval(u, r.v);
        if (w.norm() > tol) return false;
        verdict.kind = VerdictKind::DegenerateWitness;
        verdict.witness = std::make_pair(u, r.v);
        return true;
    };

    for (int trial = 0; trial < trials; ++trial) {
        ++verdict.confidence.trials;

        std::vector<double> raw(n);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (double& x : raw) {
                x = gauss(rng);
                norm2 += x * x;
            }
        } while (norm2 < 1e-12);
        Vector u = normalized(Vector(raw));

        GapResult cur = evaluate(u);
        if (certify(u, cur)) return verdict;

        // Coordinate descent on the sphere with shrinking step.
        double step = 0.5;
        while (step > 1e-9) {
            bool improved = false;
            for (std::size_t axis = 0; axis < n && !improved; ++axis) {
                for (double sign : {+1.0, -1.0}) {
                    Vector cand = u;
                    cand[axis] += sign * step;
                    if (cand.norm() == 0.0) continue;
                    cand = normalized(std::move(cand));
                    GapResult r = evaluate(cand);
                    if (r.gap < cur.gap) {
                        u = std::move(cand);
                        cur = std::move(r);
                        improved = true;
                        break;
                    }
                }
            }
            if (certify(u, cur)) return verdict;
            if (!improved) step *= 0.5;
        }
    }

    verdict.kind = VerdictKind::Nondegenerate;
    return verdict;
}

}  // namespace quadop
