#pragma once

#include <vector>

namespace ri {

/// A differentiable (or piecewise-linear) monotone path through the
/// probability hypercube [0,1]^n from (0,...,0) to (1,...,1). Built-in kinds
/// carry analytic derivatives; sampled polylines use the segment slopes and
/// are validated to be componentwise non-decreasing.
class MonotoneCurve {
  public:
    enum class Kind { Diagonal, Power, Polyline };

    static MonotoneCurve diagonal(int n);
    /// p_i(t) = t^gamma_i. Exponents must be positive so the endpoints land
    /// on the corners of the hypercube.
    static MonotoneCurve power(std::vector<double> gamma);
    /// Samples p[i][k] = p_i(t_k) on a strictly increasing knot vector
    /// starting at 0 and ending at 1.
    static MonotoneCurve polyline(std::vector<double> t,
                                  std::vector<std::vector<double>> p);

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    bool is_diagonal() const { return kind_ == Kind::Diagonal; }

    /// Fills p(t) and dp/dt; throws for t outside [0, 1].
    void evaluate(double t, std::vector<double>& p, std::vector<double>& dpdt) const;

    /// Integration breakpoints: {0, 1} for smooth kinds, the knots for
    /// polylines.
    std::vector<double> breakpoints() const;

  private:
    MonotoneCurve(Kind kind, int n) : kind_(kind), n_(n) {}

    Kind kind_;
    int n_;
    std::vector<double> gamma_;
    std::vector<double> knots_;
    std::vector<std::vector<double>> samples_; // samples_[i][k]
};

} // namespace ri
