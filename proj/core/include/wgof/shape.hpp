#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wgof/models.hpp"
#include "wgof/quadrature.hpp"

namespace wgof {

/// Direction of departure A in F(t) = t + theta A(t), with its density a = A'
/// and weighted form A*(t) = A(t)/sqrt(t(1-t)).
///
/// All callables take the point as (t, 1 - t).
class ShapeFunction
{
  public:
    using Fn = std::function<double(double, double)>;

    ShapeFunction(std::string name, Fn A, std::optional<Fn> a, double theta, UnitMap map,
                  std::optional<ConditionReport> conditions = std::nullopt);

    /// Shape supplied directly, without normalization. theta() is the total
    /// variation of A measured on a fine logistic grid.
    static ShapeFunction synthetic(std::string name, Fn A, std::optional<Fn> a = std::nullopt,
                                   UnitMap map = UnitMap::Logistic);

    double A(double t, double tc) const { return A_(t, tc); }
    double A(double t) const { return A_(t, 1.0 - t); }
    double A_star(double t, double tc) const { return A_(t, tc) / std::sqrt(t * tc); }
    double A_star(double t) const { return A_star(t, 1.0 - t); }

    bool has_density() const noexcept { return a_.has_value(); }
    /// Throws std::logic_error when no density is attached.
    double a(double t, double tc) const;

    /// L1 norm of the unnormalized density perturbation.
    double theta() const noexcept { return theta_; }
    UnitMap map() const noexcept { return map_; }
    const std::string& name() const noexcept { return name_; }
    const std::optional<ConditionReport>& conditions() const noexcept { return conditions_; }

    /// c A with everything else unchanged.
    ShapeFunction scaled(double c) const;

  private:
    std::string name_;
    Fn A_;
    std::optional<Fn> a_;
    double theta_;
    UnitMap map_;
    std::optional<ConditionReport> conditions_;
};

/// L1 norm of h - 1 for a model, as the total variation of H(t) - t: the sign
/// changes of h - 1 are located on a grid in the model's natural variable and
/// the increments of H - t between them are summed. Exact up to the accuracy
/// of H itself, including mass far in the tails that a quadrature in t cannot
/// resolve.
double theta_norm(const AlternativeModel& m);

/// Normalized shape of a model, A = (H - t)/theta, a = (h - 1)/theta.
/// Throws std::invalid_argument for models with H(t) = t.
ShapeFunction shape(const AlternativeModel& m);

/// F(t) = t + theta A(t) with A the normalized shape of a model: the mixture
/// (1 - w) U(0,1) + w H with w = theta / theta_norm(model).
class LocalPath
{
  public:
    /// Throws std::invalid_argument unless theta lies in (0, 1), w <= 1 and
    /// the CDF is nondecreasing with endpoints 0 and 1 on a check grid.
    LocalPath(const AlternativeModel& model, double theta);

    double cdf(double t) const;
    double theta() const noexcept { return theta_; }
    double weight() const noexcept { return weight_; }
    const AlternativeModel& model() const noexcept { return model_; }

    /// Uniform with probability 1 - w, otherwise a draw from the model.
    double draw(RandomStream& rng) const;
    void sample_sorted(RandomStream& rng, std::size_t n, std::vector<double>& out) const;

  private:
    AlternativeModel model_;
    double theta_;
    double weight_;
};

}  // namespace wgof
