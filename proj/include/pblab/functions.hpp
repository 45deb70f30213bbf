#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pblab/geometry.hpp"

namespace pblab {

/// Neither f nor 1/f could be evaluated to a finite number.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ChartKind { direct, reciprocal, logarithmic };

/// Local representation of f at a point.
///   direct       value = f,   derivative = f'
///   reciprocal   value = 1/f, derivative = (1/f)'
///   logarithmic  f = exp(log_modulus + i phase), f'/f = exp(dlog_log_modulus + i dlog_phase)
struct Chart {
  ChartKind kind = ChartKind::direct;
  Complex value{};
  Complex derivative{};
  double log_modulus = 0.0;
  double phase = 0.0;
  double dlog_log_modulus = 0.0;
  double dlog_phase = 0.0;
  /// False when the log-scale modulus overflowed and only its sign is known;
  /// values still saturate to 0 or infinity but f# is unavailable.
  bool resolved = true;

  static Chart direct(Complex f, Complex df) { return {ChartKind::direct, f, df}; }
  static Chart reciprocal(Complex h, Complex dh) { return {ChartKind::reciprocal, h, dh}; }
  static Chart logarithmic(Complex log_f, Complex dlog_f);
};

/// Switch between direct and reciprocal charts so that the stored value has
/// modulus at most 1e6.
Chart normalize_chart(const Chart& c);

class FunctionHandle {
 public:
  using Evaluator = std::function<Chart(Complex)>;
  static constexpr double kPoleThreshold = 1e6;

  FunctionHandle(std::string label, Evaluator evaluator);

  /// Only values are known; derivatives come from a central difference with
  /// step 1e-6 (1 - |z|), taken on 1/f when |f| > 1e6.
  static FunctionHandle from_values(std::string label,
                                    std::function<ExtendedComplex(Complex)> values);

  const std::string& label() const { return label_; }
  Chart chart(DiskPoint z) const { return evaluator_(z.value()); }
  Chart chart_raw(Complex z) const { return evaluator_(z); }

  ExtendedComplex eval(DiskPoint z) const;
  ExtendedComplex deriv(DiskPoint z) const;
  /// log|f(z)|, possibly +-inf.
  double log_abs(DiskPoint z) const;
  /// True if eval(z) had to round a log-scale value to 0 or infinity.
  bool saturates(DiskPoint z) const;

  FunctionHandle reciprocal() const;

 private:
  std::string label_;
  Evaluator evaluator_;
};

ExtendedComplex chart_value(const Chart& c, bool* saturated = nullptr);
ExtendedComplex chart_derivative(const Chart& c);
double chart_log_abs(const Chart& c);

/// log f#(z); -inf where f# underflows. Throws EvaluationError.
double log_spherical_derivative(const FunctionHandle& f, DiskPoint z);
double spherical_derivative(const FunctionHandle& f, DiskPoint z);
/// (1 - |z|^2) f#(z) and its logarithm.
double lehto_virtanen_value(const FunctionHandle& f, DiskPoint z);
double log_lehto_virtanen_value(const FunctionHandle& f, DiskPoint z);

FunctionHandle identity_function();
FunctionHandle constant_function(const ExtendedComplex& c);
/// z -> e^{i tau}(z + w)/(1 + z conj(w)).
FunctionHandle mobius_function(DiskPoint w, double tau = 0.0);

/// Poles z_k with radii eps_k placed in pairs along the radius to e^{i theta}.
struct Example1Schedule {
  double theta = 0.0;
  std::vector<DiskPoint> poles;
  std::vector<double> radii;
  /// One per pair m: z_{2m} sits on the upper and z_{2m-1} on the lower
  /// boundary curve of Delta_{r_m} around the radius.
  std::vector<double> deflections;
  /// Hyperbolic position of pair m along the radius.
  std::vector<double> positions;

  struct Conditions {
    bool radii_decreasing = false;
    bool disks_inside = false;
    bool disks_disjoint = false;
    bool diameters_shrink = false;
    bool radii_summable = false;
    bool poles_on_boundary_curves = false;
    bool ok() const {
      return radii_decreasing && disks_inside && disks_disjoint && diameters_shrink &&
             radii_summable && poles_on_boundary_curves;
    }
  };

  static Example1Schedule make_default(int pairs = 10);
  static Example1Schedule from_json_text(const std::string& text);
  std::string to_json_text() const;

  std::size_t size() const { return poles.size(); }
  /// Hyperbolic diameter of the Euclidean disk {|z - z_k| < eps_k}.
  double hyperbolic_diameter(std::size_t k) const;
  Conditions check() const;
};

/// sum_{k<=K} eps_k^2 / (z - z_k); K = 0 means all poles.
FunctionHandle example1_f0(const Example1Schedule& s, int truncation = 0);
/// f0(z) (z - e^{i theta}).
FunctionHandle example2_f1(const Example1Schedule& s, int truncation = 0);
/// sum_{K<k<=N} eps_k^2 / |z - z_k|.
double example1_tail_bound(const Example1Schedule& s, int truncation, Complex z);

/// gavrilov_g = exp(-exp(1/(1-z))), saginjan_h = exp(-1/(1-z)),
/// square_exp = exp(-(1-z)^-2). Evaluated in log scale.
FunctionHandle gallery(const std::string& name);
const std::vector<std::string>& gallery_names();

/// identity, reciprocal_identity, constant:re,im | constant:inf, mobius:re,im[,tau],
/// example1_f0[:K], example2_f1[:K], or a gallery name.
FunctionHandle function_from_spec(const std::string& spec);

}  // namespace pblab
