#include "pblab/functions.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pblab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// log(2 cosh x) without overflow.
double log_two_cosh(double x) {
  const double a = std::abs(x);
  if (std::isinf(a)) return kInf;
  return a + std::log1p(std::exp(-2.0 * a));
}

}  // namespace

Chart Chart::logarithmic(Complex log_f, Complex dlog_f) {
  Chart c;
  c.kind = ChartKind::logarithmic;
  c.log_modulus = log_f.real();
  c.phase = log_f.imag();
  c.dlog_log_modulus = std::log(std::abs(dlog_f));
  c.dlog_phase = std::arg(dlog_f);
  return c;
}

Chart normalize_chart(const Chart& c) {
  const double t = FunctionHandle::kPoleThreshold;
  if (c.kind == ChartKind::direct && std::abs(c.value) > t) {
    const Complex f = c.value;
    return Chart::reciprocal(1.0 / f, -c.derivative / (f * f));
  }
  if (c.kind == ChartKind::reciprocal && std::abs(c.value) > t) {
    const Complex h = c.value;
    return Chart::direct(1.0 / h, -c.derivative / (h * h));
  }
  return c;
}

ExtendedComplex chart_value(const Chart& c, bool* saturated) {
  if (saturated) *saturated = false;
  switch (c.kind) {
    case ChartKind::direct:
      return ExtendedComplex::from_possibly_infinite(c.value);
    case ChartKind::reciprocal:
      return ExtendedComplex::from_possibly_infinite(c.value).reciprocal();
    case ChartKind::logarithmic: {
      const double m = std::exp(c.log_modulus);
      if (m == 0.0 || std::isinf(m)) {
        if (saturated) *saturated = std::isfinite(c.log_modulus);
        return m == 0.0 ? ExtendedComplex(Complex{0.0, 0.0}) : ExtendedComplex::infinity();
      }
      return ExtendedComplex(std::polar(m, std::fmod(c.phase, 2.0 * kPi)));
    }
  }
  return ExtendedComplex::infinity();
}

ExtendedComplex chart_derivative(const Chart& c) {
  switch (c.kind) {
    case ChartKind::direct:
      return ExtendedComplex::from_possibly_infinite(c.derivative);
    case ChartKind::reciprocal: {
      if (c.value == Complex{0.0, 0.0}) return ExtendedComplex::infinity();
      return ExtendedComplex::from_possibly_infinite(-c.derivative / (c.value * c.value));
    }
    case ChartKind::logarithmic: {
      const double lm = c.log_modulus + c.dlog_log_modulus;
      if (std::isnan(lm)) return ExtendedComplex(Complex{0.0, 0.0});
      const double m = std::exp(lm);
      if (std::isinf(m)) return ExtendedComplex::infinity();
      return ExtendedComplex(std::polar(m, std::fmod(c.phase + c.dlog_phase, 2.0 * kPi)));
    }
  }
  return ExtendedComplex::infinity();
}

double chart_log_abs(const Chart& c) {
  switch (c.kind) {
    case ChartKind::direct:
      return std::log(std::abs(c.value));
    case ChartKind::reciprocal:
      return -std::log(std::abs(c.value));
    case ChartKind::logarithmic:
      return c.log_modulus;
  }
  return 0.0;
}

FunctionHandle::FunctionHandle(std::string label, Evaluator evaluator)
    : label_(std::move(label)), evaluator_(std::move(evaluator)) {}

FunctionHandle FunctionHandle::from_values(std::string label,
                                           std::function<ExtendedComplex(Complex)> values) {
  auto ev = [values](Complex z) -> Chart {
    const double h = 1e-6 * (1.0 - std::abs(z));
    const ExtendedComplex f = values(z);
    const ExtendedComplex fp = values(z + h);
    const ExtendedComplex fm = values(z - h);
    const bool use_reciprocal = f.is_infinite() || std::abs(f.value()) > kPoleThreshold;
    if (!use_reciprocal && fp.is_finite() && fm.is_finite()) {
      return Chart::direct(f.value(), (fp.value() - fm.value()) / (2.0 * h));
    }
    const ExtendedComplex r = f.reciprocal();
    const ExtendedComplex rp = fp.reciprocal();
    const ExtendedComplex rm = fm.reciprocal();
    if (r.is_infinite() || rp.is_infinite() || rm.is_infinite()) {
      throw EvaluationError("central difference failed for both f and 1/f");
    }
    return Chart::reciprocal(r.value(), (rp.value() - rm.value()) / (2.0 * h));
  };
  return FunctionHandle(std::move(label), std::move(ev));
}

ExtendedComplex FunctionHandle::eval(DiskPoint z) const { return chart_value(chart(z)); }
ExtendedComplex FunctionHandle::deriv(DiskPoint z) const { return chart_derivative(chart(z)); }
double FunctionHandle::log_abs(DiskPoint z) const { return chart_log_abs(chart(z)); }

bool FunctionHandle::saturates(DiskPoint z) const {
  bool s = false;
  chart_value(chart(z), &s);
  return s;
}

FunctionHandle FunctionHandle::reciprocal() const {
  Evaluator inner = evaluator_;
  auto ev = [inner](Complex z) -> Chart {
    Chart c = inner(z);
    switch (c.kind) {
      case ChartKind::direct:
        c.kind = ChartKind::reciprocal;
        break;
      case ChartKind::reciprocal:
        c.kind = ChartKind::direct;
        break;
      case ChartKind::logarithmic:
        // log(1/f) = -log f and (1/f)'/(1/f) = -f'/f.
        c.log_modulus = -c.log_modulus;
        c.phase = -c.phase;
        c.dlog_phase += kPi;
        break;
    }
    return c;
  };
  return FunctionHandle("1/(" + label_ + ")", std::move(ev));
}

double log_spherical_derivative(const FunctionHandle& f, DiskPoint z) {
  const Chart c = f.chart(z);
  double out = 0.0;
  if (c.kind == ChartKind::logarithmic) {
    // f# = |f'/f| / (2 cosh log|f|).
    if (!c.resolved || std::isnan(c.log_modulus) || std::isnan(c.dlog_log_modulus)) {
      throw EvaluationError("log-scale evaluation failed");
    }
    if (std::isinf(c.log_modulus)) return -kInf;
    out = c.dlog_log_modulus - log_two_cosh(c.log_modulus);
  } else {
    // Same formula for f and 1/f.
    if (!finite(c.value) || !finite(c.derivative)) {
      throw EvaluationError("f and 1/f both overflow");
    }
    const double num = std::abs(c.derivative);
    if (num == 0.0) return -kInf;
    out = std::log(num) - std::log1p(std::norm(c.value));
  }
  if (std::isnan(out)) throw EvaluationError("spherical derivative is not a number");
  return out;
}

double spherical_derivative(const FunctionHandle& f, DiskPoint z) {
  return std::exp(log_spherical_derivative(f, z));
}

double lehto_virtanen_value(const FunctionHandle& f, DiskPoint z) {
  return std::exp(log_lehto_virtanen_value(f, z));
}

double log_lehto_virtanen_value(const FunctionHandle& f, DiskPoint z) {
  return std::log(z.conformal_weight()) + log_spherical_derivative(f, z);
}

FunctionHandle identity_function() {
  return FunctionHandle("identity", [](Complex z) { return Chart::direct(z, 1.0); });
}

FunctionHandle constant_function(const ExtendedComplex& c) {
  if (c.is_infinite()) {
    return FunctionHandle("constant:inf", [](Complex) { return Chart::reciprocal(0.0, 0.0); });
  }
  const Complex v = c.value();
  return FunctionHandle("constant:" + c.to_string(),
                        [v](Complex) { return normalize_chart(Chart::direct(v, 0.0)); });
}

FunctionHandle mobius_function(DiskPoint w, double tau) {
  const Complex a = w.value();
  const Complex e = std::polar(1.0, tau);
  std::ostringstream label;
  label.precision(17);
  label << "mobius:" << a.real() << "," << a.imag() << "," << tau;
  return FunctionHandle(label.str(), [a, e](Complex z) {
    const Complex d = 1.0 + z * std::conj(a);
    return Chart::direct(e * (z + a) / d, e * (1.0 - std::norm(a)) / (d * d));
  });
}

FunctionHandle gallery(const std::string& name) {
  if (name == "saginjan_h") {
    return FunctionHandle(name, [](Complex z) {
      const Complex u = 1.0 - z;
      return Chart::logarithmic(-1.0 / u, -1.0 / (u * u));
    });
  }
  if (name == "square_exp") {
    return FunctionHandle(name, [](Complex z) {
      const Complex u = 1.0 - z;
      return Chart::logarithmic(-1.0 / (u * u), -2.0 / (u * u * u));
    });
  }
  if (name == "gavrilov_g") {
    return FunctionHandle(name, [](Complex z) {
      const Complex u = 1.0 - z;
      const Complex v = 1.0 / u;
      // log g = -exp(v), g'/g = -exp(v)/u^2; moduli kept as logarithms.
      Chart c;
      c.kind = ChartKind::logarithmic;
      const double ev = std::exp(v.real());
      c.log_modulus = std::isinf(ev) ? (std::cos(v.imag()) > 0 ? -kInf : kInf)
                                     : -ev * std::cos(v.imag());
      c.phase = std::isinf(ev) ? 0.0 : -ev * std::sin(v.imag());
      c.resolved = std::isfinite(ev);
      c.dlog_log_modulus = v.real() - 2.0 * std::log(std::abs(u));
      c.dlog_phase = kPi + v.imag() - 2.0 * std::arg(u);
      return c;
    });
  }
  throw DomainError("unknown gallery function '" + name + "'");
}

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names{"gavrilov_g", "saginjan_h", "square_exp"};
  return names;
}

namespace {

Complex parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0;
  double im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw DomainError("bad complex number '" + text + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) throw DomainError("bad complex number '" + text + "'");
  }
  return {re, im};
}

}  // namespace

FunctionHandle function_from_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "identity") return identity_function();
  if (head == "reciprocal_identity") return identity_function().reciprocal();
  if (head == "constant") {
    if (tail == "inf") return constant_function(ExtendedComplex::infinity());
    return constant_function(ExtendedComplex(parse_complex(tail)));
  }
  if (head == "mobius") {
    std::istringstream in(tail);
    double re = 0.0, im = 0.0, tau = 0.0;
    char c1 = 0, c2 = 0;
    if (!(in >> re >> c1 >> im) || c1 != ',') throw DomainError("mobius needs re,im[,tau]");
    if (in >> c2) {
      if (c2 != ',' || !(in >> tau)) throw DomainError("mobius needs re,im[,tau]");
    }
    return mobius_function(DiskPoint(re, im), tau);
  }
  if (head == "example1_f0" || head == "example2_f1") {
    const int k = tail.empty() ? 0 : std::stoi(tail);
    const Example1Schedule s = Example1Schedule::make_default();
    return head == "example1_f0" ? example1_f0(s, k) : example2_f1(s, k);
  }
  return gallery(head);
}

}  // namespace pblab
