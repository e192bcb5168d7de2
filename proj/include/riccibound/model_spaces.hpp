#pragma once

#include <vector>

#include "riccibound/numerics.hpp"

namespace riccibound {

/// One constant-curvature factor of a product space.
struct SpaceFactor {
    int dim = 0;
    double curvature = 0.0;  // sectional curvature, 1/length^2
};

/// A homogeneous space given as an ordered product of constant-curvature
/// factors. Geodesics in such a product do not turn, so the Ricci quadratic
/// form is conserved along them; this is what makes these spaces usable as
/// exact ground truth for the volume bounds.
class ProductSpace {
public:
    explicit ProductSpace(std::vector<SpaceFactor> factors);

    const std::vector<SpaceFactor>& factors() const { return factors_; }
    int total_dim() const { return total_dim_; }

private:
    std::vector<SpaceFactor> factors_;
    int total_dim_ = 0;
};

/// Eigenvalues of the Ricci quadratic form at a point, with multiplicities.
/// Blocks are kept sorted ascending by value; equal values are merged.
class RicciSpectrum {
public:
    struct Block {
        double value = 0.0;
        int multiplicity = 0;
    };

    explicit RicciSpectrum(std::vector<Block> blocks);
    static RicciSpectrum from_eigenvalues(const std::vector<double>& values);

    const std::vector<Block>& blocks() const { return blocks_; }
    int dim() const { return dim_; }
    double lambda_min() const { return blocks_.front().value; }
    double lambda_max() const { return blocks_.back().value; }

    /// Per-coordinate eigenvalues, expanded in ascending block order.
    std::vector<double> expanded() const;

private:
    std::vector<Block> blocks_;
    int dim_ = 0;
};

/// Unit tangent direction, |X| = 1 within 1e-12.
class Direction {
public:
    explicit Direction(std::vector<double> components);
    static Direction normalized(std::vector<double> components);

    const std::vector<double>& components() const { return components_; }
    int dim() const { return static_cast<int>(components_.size()); }

private:
    std::vector<double> components_;
};

/// Ricci spectrum of a product space: a factor of dimension n and curvature k
/// contributes eigenvalue (n-1)k with multiplicity n.
RicciSpectrum ricci_spectrum(const ProductSpace& space);

/// Sum of eigenvalue * multiplicity.
double scalar_curvature(const RicciSpectrum& spectrum);

/// Evaluates sum_i lambda_i X_i^2 with coordinates ordered by ascending
/// eigenvalue block. Throws on dimension mismatch.
double ricci_quadratic_form(const RicciSpectrum& spectrum, const Direction& x);

struct ShellTolerance {
    double abs = 1e-12;
    double rel = 1e-10;
};

/// Exact geodesic-ball volume of a product space by shell decomposition:
/// vol(t) = int_0^t Area_1(tau) Vol_rest(sqrt(t^2 - tau^2)) dtau, with
/// adaptive Gauss-Kronrod shells and recursion for three or more factors.
/// Positive-curvature factors saturate at their total volume past the cut
/// locus. Throws QuadratureError if the tolerance cannot be met.
double exact_ball_volume(const ProductSpace& space, double t, ShellTolerance tol = {});

/// Volume of a geodesic ball of radius t in the maximally symmetric d-space
/// with all sectional curvatures k: Omega_{d-1} int_0^t sn(k,tau)^{d-1} dtau.
/// Requires d >= 2.
double model_ball_volume(int d, double k, double t);

}  // namespace riccibound
