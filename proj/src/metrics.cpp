#include "ssp/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "ssp/fft.hpp"

namespace ssp {

double content_l2(const Grid& a, const Grid& b) {
    require_same_shape(a, b, "content_l2");
    const double ref = l2_norm(b);
    if (ref == 0.0) throw std::invalid_argument("content_l2: reference grid has zero norm");
    return l2_distance(a, b) / ref;
}

namespace detail {

void jacobi_eigen(std::vector<double>& a, int d, std::vector<double>& w,
                  std::vector<double>& vectors) {
    auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * d + j]; };
    vectors.assign(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) vectors[static_cast<std::size_t>(i) * d + i] = 1.0;
    auto V = [&](int i, int j) -> double& { return vectors[static_cast<std::size_t>(i) * d + j]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < d; ++i) {
            for (int j = i + 1; j < d; ++j) off += A(i, j) * A(i, j);
        }
        if (off < 1e-28) break;
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < d; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < d; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    w.resize(d);
    for (int i = 0; i < d; ++i) w[i] = A(i, i);
}

}  // namespace detail

namespace {

void check_moments(const FeatureSet& f, const char* what) {
    const int d = f.dim;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            if (std::fabs(f.cov(i, j) - f.cov(j, i)) > 1e-10) {
                throw std::invalid_argument(std::string(what) + ": covariance not symmetric");
            }
        }
    }
    std::vector<double> a = f.covariance, w, v;
    detail::jacobi_eigen(a, d, w, v);
    for (double lambda : w) {
        if (lambda < -1e-8) {
            throw std::invalid_argument(std::string(what) + ": covariance not PSD beyond tolerance");
        }
    }
}

// B = V diag(sqrt(max(w, 0))) V^T for a symmetric PSD input.
std::vector<double> sym_sqrt(const std::vector<double>& m, int d) {
    std::vector<double> a = m, w, v;
    detail::jacobi_eigen(a, d, w, v);
    std::vector<double> out(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            double acc = 0.0;
            for (int k = 0; k < d; ++k) {
                const double lk = w[k] > 0.0 ? std::sqrt(w[k]) : 0.0;
                acc += v[static_cast<std::size_t>(i) * d + k] * lk *
                       v[static_cast<std::size_t>(j) * d + k];
            }
            out[static_cast<std::size_t>(i) * d + j] = acc;
        }
    }
    return out;
}

std::vector<double> mat_mul(const std::vector<double>& a, const std::vector<double>& b, int d) {
    std::vector<double> out(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            const double aik = a[static_cast<std::size_t>(i) * d + k];
            if (aik == 0.0) continue;
            for (int j = 0; j < d; ++j) {
                out[static_cast<std::size_t>(i) * d + j] +=
                    aik * b[static_cast<std::size_t>(k) * d + j];
            }
        }
    }
    return out;
}

}  // namespace

FeatureSet FeatureSet::from_vectors(const std::vector<std::vector<double>>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("FeatureSet: no vectors");
    const int d = static_cast<int>(vectors.front().size());
    if (d == 0) throw std::invalid_argument("FeatureSet: empty vectors");
    for (const auto& v : vectors) {
        if (static_cast<int>(v.size()) != d) {
            throw std::invalid_argument("FeatureSet: inconsistent vector dimensions");
        }
    }
    FeatureSet f;
    f.dim = d;
    f.mean.assign(d, 0.0);
    const double n = static_cast<double>(vectors.size());
    for (const auto& v : vectors) {
        for (int i = 0; i < d; ++i) f.mean[i] += v[i];
    }
    for (double& m : f.mean) m /= n;
    f.covariance.assign(static_cast<std::size_t>(d) * d, 0.0);
    for (const auto& v : vectors) {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                f.covariance[static_cast<std::size_t>(i) * d + j] +=
                    (v[i] - f.mean[i]) * (v[j] - f.mean[j]);
            }
        }
    }
    for (double& c : f.covariance) c /= n;
    return f;
}

FeatureSet FeatureSet::from_moments(std::vector<double> mean, std::vector<double> covariance) {
    FeatureSet f;
    f.dim = static_cast<int>(mean.size());
    if (covariance.size() != static_cast<std::size_t>(f.dim) * f.dim) {
        throw std::invalid_argument("FeatureSet: covariance size must be dim*dim");
    }
    f.mean = std::move(mean);
    f.covariance = std::move(covariance);
    check_moments(f, "FeatureSet");
    return f;
}

double frechet_gaussian(const FeatureSet& p, const FeatureSet& q) {
    if (p.dim != q.dim) throw std::invalid_argument("frechet_gaussian: dimension mismatch");
    check_moments(p, "frechet_gaussian");
    check_moments(q, "frechet_gaussian");
    const int d = p.dim;
    double mean_term = 0.0;
    for (int i = 0; i < d; ++i) {
        const double t = p.mean[i] - q.mean[i];
        mean_term += t * t;
    }
    double trace_p = 0.0, trace_q = 0.0;
    for (int i = 0; i < d; ++i) {
        trace_p += p.cov(i, i);
        trace_q += q.cov(i, i);
    }
    const std::vector<double> root_p = sym_sqrt(p.covariance, d);
    std::vector<double> inner = mat_mul(mat_mul(root_p, q.covariance, d), root_p, d);
    // symmetrize away round-off before the second square root
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double s = 0.5 * (inner[static_cast<std::size_t>(i) * d + j] +
                                    inner[static_cast<std::size_t>(j) * d + i]);
            inner[static_cast<std::size_t>(i) * d + j] = s;
            inner[static_cast<std::size_t>(j) * d + i] = s;
        }
    }
    std::vector<double> w, v;
    detail::jacobi_eigen(inner, d, w, v);
    double trace_root = 0.0;
    for (double lambda : w) {
        if (lambda > 0.0) trace_root += std::sqrt(lambda);
    }
    const double dist = mean_term + trace_p + trace_q - 2.0 * trace_root;
    return dist > 0.0 ? dist : 0.0;
}

double artfid_composite(double content_dist, double style_dist) {
    if (!(content_dist >= 0.0) || !(style_dist >= 0.0)) {
        throw std::invalid_argument("artfid_composite: distances must be non-negative");
    }
    return (1.0 + content_dist) * (1.0 + style_dist);
}

double band_ratio(const Grid& g, const FilterSpec& filter) {
    const Spectrum f = fft2(g);
    const Grid low = make_lowpass(filter, g.height, g.width);
    const Grid ones(g.height, g.width, 1, 1.0);
    const double total = band_energy(f, ones);
    if (total == 0.0) throw std::invalid_argument("band_ratio: zero-energy grid");
    return band_energy(f, low) / total;
}

}  // namespace ssp
