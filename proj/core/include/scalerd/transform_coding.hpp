#pragma once

#include <span>
#include <utility>
#include <vector>

#include "scalerd/units.hpp"

namespace scalerd {

/// Transform coding of the residual: beta x beta sub-slices per macroblock,
/// each transformed with a d_trans x d_trans separable cosine basis.
struct TransformConfig {
    int beta = 4;
    int d_trans = 4;
    std::vector<double> q_weight;            // row-major d_trans x d_trans; empty = uniform
    std::vector<std::pair<int, int>> omega;  // retained (k, l); empty = all

    static TransformConfig baseline();

    std::vector<std::pair<int, int>> retained() const;
    void validate() const;
};

/// Inverse weights normalised to sum to one.
std::vector<double> normalize_qweight(std::span<const double> q_weight);

/// Y(A; k, l) = int_0^1 int_0^1 exp(-A|x - xi|) cos(k pi x) cos(l pi xi) dx dxi.
/// A = +infinity yields 0.
double integral_Y(double A, int k, int l);

/// E[F_kl^2] of the cosine coefficient (k, l) over one sub-slice.
double coeff_second_moment(double sigma_fr2, double alpha_rx, double alpha_ry, int beta,
                           const SlicingParams& slicing, int k, int l);

struct BitAllocation {
    double coeffs_per_slice = 0.0;     // B_total / (M N T p_inter)
    double coeffs_per_subslice = 0.0;  // coeffs_per_slice / beta^2
    std::vector<double> b_kl;          // row-major d_trans x d_trans
};

/// Raises NumericError when p_inter is zero (no inter slices at this rate).
BitAllocation allocate_bits(double b_total, const SlicingParams& slicing, double p_inter,
                            const TransformConfig& cfg);

struct InterMse {
    double mse = 0.0;
    double unclamped = 0.0;
    double retained_energy = 0.0;  // beta^2 M N sum_Omega E[F^2]
    bool clamped = false;
};

/// sigma_fr2 - beta^2 M N sum_Omega E[F_kl^2] (1 - K 2^(-2 b_kl)), clamped to
/// [0, upper_bound]. Pass upper_bound = +infinity to disable the upper clamp.
InterMse inter_mse(double sigma_fr2, double alpha_rx, double alpha_ry,
                   const TransformConfig& cfg, const SlicingParams& slicing,
                   std::span<const double> b_kl, double k_quant, double upper_bound);

}  // namespace scalerd
