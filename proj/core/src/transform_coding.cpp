#include "scalerd/transform_coding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "scalerd/error.hpp"

namespace scalerd {

TransformConfig TransformConfig::baseline() { return {}; }

std::vector<std::pair<int, int>> TransformConfig::retained() const {
    if (!omega.empty()) return omega;
    std::vector<std::pair<int, int>> all;
    all.reserve(static_cast<std::size_t>(d_trans) * d_trans);
    for (int k = 0; k < d_trans; ++k) {
        for (int l = 0; l < d_trans; ++l) all.emplace_back(k, l);
    }
    return all;
}

void TransformConfig::validate() const {
    if (beta < 1) throw ValidationError("beta must be >= 1");
    if (d_trans < 1) throw ValidationError("d_trans must be >= 1");
    const auto cells = static_cast<std::size_t>(d_trans) * d_trans;
    if (!q_weight.empty() && q_weight.size() != cells) {
        throw ValidationError("q_weight has " + std::to_string(q_weight.size()) +
                              " entries, expected " + std::to_string(cells));
    }
    for (double w : q_weight) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ValidationError("q_weight entries must be positive and finite");
        }
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& [k, l] : omega) {
        if (k < 0 || l < 0 || k >= d_trans || l >= d_trans) {
            throw ValidationError("omega index (" + std::to_string(k) + ", " +
                                  std::to_string(l) + ") outside the transform block");
        }
        if (!seen.emplace(k, l).second) {
            throw ValidationError("omega index (" + std::to_string(k) + ", " +
                                  std::to_string(l) + ") listed twice");
        }
    }
}

std::vector<double> normalize_qweight(std::span<const double> q_weight) {
    if (q_weight.empty()) throw ValidationError("q_weight is empty");
    double total = 0.0;
    for (double w : q_weight) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ValidationError("q_weight entries must be positive and finite");
        }
        total += 1.0 / w;
    }
    std::vector<double> out;
    out.reserve(q_weight.size());
    for (double w : q_weight) out.push_back(1.0 / w / total);
    return out;
}

double integral_Y(double A, int k, int l) {
    if (std::isinf(A) && A > 0.0) return 0.0;
    if (!(A > 0.0)) throw ValidationError("decay A must be positive");
    if (k < 0 || l < 0) throw ValidationError("coefficient indices must be >= 0");

    const double pi = std::numbers::pi;
    const double a2 = A * A;
    const double lk = a2 + (k * pi) * (k * pi);
    const double ll = a2 + (l * pi) * (l * pi);
    const double sk = k % 2 == 0 ? 1.0 : -1.0;
    const double sl = l % 2 == 0 ? 1.0 : -1.0;

    double diag = 0.0;
    if (k == l) diag = (A / ll + A / lk) * 0.5 * ((k == 0 || l == 0) ? 2.0 : 1.0);
    // (1 + (-1)^(k+l)) reduces to 2 whenever k + l is even; for odd k + l the
    // integral vanishes by the x -> 1 - x symmetry.
    const double edge = (1.0 + sk * sl) - std::exp(-A) * (sk + sl);
    return diag - a2 / (ll * lk) * edge;
}

double coeff_second_moment(double sigma_fr2, double alpha_rx, double alpha_ry, int beta,
                           const SlicingParams& slicing, int k, int l) {
    if (!(sigma_fr2 >= 0.0)) throw ValidationError("residual variance must be >= 0");
    if (beta < 1) throw ValidationError("beta must be >= 1");
    if (sigma_fr2 == 0.0) return 0.0;
    const double bm = static_cast<double>(beta) * slicing.m;
    const double bn = static_cast<double>(beta) * slicing.n;
    const double wk = k == 0 ? 1.0 : 2.0;
    const double wl = l == 0 ? 1.0 : 2.0;
    return sigma_fr2 * wk * wl / (bm * bn) * integral_Y(alpha_rx / bm, k, k) *
           integral_Y(alpha_ry / bn, l, l);
}

BitAllocation allocate_bits(double b_total, const SlicingParams& slicing, double p_inter,
                            const TransformConfig& cfg) {
    cfg.validate();
    if (!(b_total > 0.0)) throw ValidationError("bit budget must be positive");
    if (!(p_inter >= 0.0 && p_inter <= 1.0)) throw ValidationError("p_inter must lie in [0, 1]");
    if (p_inter == 0.0) throw NumericError("no inter slices at this rate (p_inter = 0)");

    const auto cells = static_cast<std::size_t>(cfg.d_trans) * cfg.d_trans;
    const auto weights = cfg.q_weight.empty()
                             ? std::vector<double>(cells, 1.0 / static_cast<double>(cells))
                             : normalize_qweight(cfg.q_weight);

    BitAllocation out;
    out.coeffs_per_slice = b_total / (static_cast<double>(slicing.slice_count()) * p_inter);
    out.coeffs_per_subslice = out.coeffs_per_slice / (static_cast<double>(cfg.beta) * cfg.beta);
    out.b_kl.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) out.b_kl[i] = weights[i] * out.coeffs_per_subslice;
    return out;
}

InterMse inter_mse(double sigma_fr2, double alpha_rx, double alpha_ry,
                   const TransformConfig& cfg, const SlicingParams& slicing,
                   std::span<const double> b_kl, double k_quant, double upper_bound) {
    cfg.validate();
    const auto cells = static_cast<std::size_t>(cfg.d_trans) * cfg.d_trans;
    if (b_kl.size() != cells) {
        throw ValidationError("bit map has " + std::to_string(b_kl.size()) +
                              " entries, expected " + std::to_string(cells));
    }
    if (!(k_quant >= 1.0 && k_quant <= 3.0)) throw ValidationError("k_quant must lie in [1, 3]");

    const double scale = static_cast<double>(cfg.beta) * cfg.beta * slicing.m * slicing.n;
    double retained = 0.0;
    double coded = 0.0;
    for (const auto& [k, l] : cfg.retained()) {
        const double b = b_kl[static_cast<std::size_t>(k) * cfg.d_trans + l];
        if (!(b >= 0.0)) throw ValidationError("bit allocation must be >= 0");
        const double e = coeff_second_moment(sigma_fr2, alpha_rx, alpha_ry, cfg.beta, slicing, k, l);
        retained += e;
        coded += e * (1.0 - k_quant * std::exp2(-2.0 * b));
    }

    InterMse out;
    out.retained_energy = scale * retained;
    out.unclamped = sigma_fr2 - scale * coded;
    out.mse = std::clamp(out.unclamped, 0.0, std::max(upper_bound, 0.0));
    out.clamped = out.mse != out.unclamped;
    return out;
}

}  // namespace scalerd
