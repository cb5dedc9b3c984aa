#include "relfix/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace relfix {

namespace {

constexpr double kMargin = 1e-12;

double need(const Params& p, const char* key, const char* form) {
  auto it = p.find(key);
  if (it == p.end())
    throw std::invalid_argument(std::string(form) + " requires parameter '" + key + "'");
  return it->second;
}

void require(bool ok, const std::string& constraint) {
  if (!ok) throw std::invalid_argument("parameter constraint violated: " + constraint);
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

double max5(double a, double b, double c, double d, double e) {
  return std::max({a, b, c, d, e});
}

}  // namespace

ImplicitRelation::ImplicitRelation(std::string name, Evaluator evaluator, bool g1, bool g2,
                                   bool g3, std::optional<ComparisonFunction> phi)
    : name_(std::move(name)), eval_(std::move(evaluator)), g1_(g1), g2_(g2), g3_(g3),
      phi_(std::move(phi)) {
  if (g1_ && !phi_)
    throw std::invalid_argument("a g1-declared implicit relation must carry its phi");
}

double ImplicitRelation::operator()(const SixTuple& r) const {
  for (double v : r)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::domain_error("implicit relation arguments must be non-negative");
  return eval_(r);
}

const char* to_string(CatalogId id) {
  static const char* names[] = {"I",  "II", "III", "IV", "V",   "VI",  "VII",  "VIII",
                                "IX", "X",  "XI",  "XII", "XIII", "XIV", "XV", "XVI"};
  return names[static_cast<int>(id)];
}

std::optional<CatalogId> catalog_id_from_string(std::string_view text) {
  for (int i = 0; i < 16; ++i)
    if (text == to_string(static_cast<CatalogId>(i))) return static_cast<CatalogId>(i);
  return std::nullopt;
}

ImplicitRelation make_catalog(CatalogId id, const Params& params,
                              std::optional<ComparisonFunction> varphi) {
  const char* roman = to_string(id);
  const std::string base = std::string("catalog ") + roman;
  switch (id) {
    case CatalogId::I: {
      const double k = need(params, "k", roman);
      require(k >= 0.0 && k < 1.0, base + " requires k in [0,1)");
      return ImplicitRelation(
          base + "(k=" + fmt_num(k) + ")",
          [k](const SixTuple& r) { return r[0] - k * r[1]; }, true, true, true,
          ComparisonFunction::linear(k));
    }
    case CatalogId::II: {
      if (!varphi) throw std::invalid_argument(base + " requires a comparison function varphi");
      ComparisonFunction phi = *varphi;
      return ImplicitRelation(
          base + "(varphi=" + phi.describe() + ")",
          [phi](const SixTuple& r) { return r[0] - phi(r[1]); }, true, true, true, phi);
    }
    case CatalogId::III: {
      const double k = need(params, "k", roman);
      require(k >= 0.0 && k < 0.5, base + " requires k in [0,1/2)");
      return ImplicitRelation(
          base + "(k=" + fmt_num(k) + ")",
          [k](const SixTuple& r) { return r[0] - k * (r[2] + r[3]); }, true, true, true,
          ComparisonFunction::linear(k / (1.0 - k)));
    }
    case CatalogId::IV: {
      const double k = need(params, "k", roman);
      require(k >= 0.0 && k < 0.5, base + " requires k in [0,1/2)");
      return ImplicitRelation(
          base + "(k=" + fmt_num(k) + ")",
          [k](const SixTuple& r) { return r[0] - k * (r[4] + r[5]); }, true, true, true,
          ComparisonFunction::linear(k / (1.0 - k)));
    }
    case CatalogId::V: {
      const double a1 = need(params, "a1", roman);
      const double a2 = need(params, "a2", roman);
      const double a3 = need(params, "a3", roman);
      require(a1 >= 0.0 && a1 < 1.0 && a2 >= 0.0 && a2 < 1.0 && a3 >= 0.0 && a3 < 1.0,
              base + " requires a1,a2,a3 in [0,1)");
      require(a1 + 2.0 * a2 + 2.0 * a3 < 1.0, base + " requires a1+2a2+2a3 < 1");
      return ImplicitRelation(
          base + "(a1=" + fmt_num(a1) + ",a2=" + fmt_num(a2) + ",a3=" + fmt_num(a3) + ")",
          [a1, a2, a3](const SixTuple& r) {
            return r[0] - a1 * r[1] - a2 * (r[2] + r[3]) - a3 * (r[4] + r[5]);
          },
          true, true, true,
          ComparisonFunction::linear((a1 + a2 + a3) / (1.0 - a2 - a3)));
    }
    case CatalogId::VI: {
      const double k = need(params, "k", roman);
      const double big_l = need(params, "L", roman);
      require(k >= 0.0 && k < 1.0, base + " requires k in [0,1)");
      require(big_l >= 0.0, base + " requires L >= 0");
      return ImplicitRelation(
          base + "(k=" + fmt_num(k) + ",L=" + fmt_num(big_l) + ")",
          [k, big_l](const SixTuple& r) {
            return r[0] - k * r[1] - big_l * std::min({r[2], r[3], r[4], r[5]});
          },
          true, true, true, ComparisonFunction::linear(k));
    }
    case CatalogId::VII: {
      const double k = need(params, "k", roman);
      const double big_l = need(params, "L", roman);
      require(k >= 0.0 && k < 1.0, base + " requires k in [0,1)");
      require(big_l >= 0.0, base + " requires L >= 0");
      return ImplicitRelation(
          base + "(k=" + fmt_num(k) + ",L=" + fmt_num(big_l) + ")",
          [k, big_l](const SixTuple& r) {
            return r[0] - k * std::max({r[1], r[2], r[3], (r[4] + r[5]) / 2.0}) -
                   big_l * std::min({r[2], r[3], r[4], r[5]});
          },
          true, true, true, ComparisonFunction::linear(k));
    }
    case CatalogId::VIII: {
      const double k = need(params, "k", roman);
      require(k >= 0.0 && k < 0.5, base + " requires k in [0,1/2)");
      return ImplicitRelation(
          base + "(k=" + fmt_num(k) + ")",
          [k](const SixTuple& r) { return r[0] - k * max5(r[1], r[2], r[3], r[4], r[5]); },
          true, true, true, ComparisonFunction::linear(k / (1.0 - k)));
    }
    case CatalogId::IX: {
      const double a1 = need(params, "a1", roman);
      const double a2 = need(params, "a2", roman);
      const double a3 = need(params, "a3", roman);
      const double a4 = need(params, "a4", roman);
      const double a5 = need(params, "a5", roman);
      require(a1 > 0.0 && a2 > 0.0 && a3 > 0.0 && a4 > 0.0 && a5 > 0.0,
              base + " requires a1..a5 > 0");
      require(a1 + a2 + a3 + a4 + a5 < 1.0, base + " requires a1+..+a5 < 1");
      const double slope = (a1 + a2 + a4) / (1.0 - a3 - a4);
      require(slope < 1.0,
              base + " requires the derived comparison slope (a1+a2+a4)/(1-a3-a4) < 1");
      return ImplicitRelation(
          base + "(a=" + fmt_num(a1) + "," + fmt_num(a2) + "," + fmt_num(a3) + "," + fmt_num(a4) +
              "," + fmt_num(a5) + ")",
          [a1, a2, a3, a4, a5](const SixTuple& r) {
            return r[0] - (a1 * r[1] + a2 * r[2] + a3 * r[3] + a4 * r[4] + a5 * r[5]);
          },
          true, true, true, ComparisonFunction::linear(slope));
    }
    case CatalogId::X: {
      const double k = need(params, "k", roman);
      require(k >= 0.0 && k < 1.0, base + " requires k in [0,1)");
      return ImplicitRelation(
          base + "(k=" + fmt_num(k) + ")",
          [k](const SixTuple& r) {
            return r[0] - k * max5(r[1], r[2], r[3], r[4] / 2.0, r[5] / 2.0);
          },
          true, true, true, ComparisonFunction::linear(k));
    }
    case CatalogId::XI: {
      const double k = need(params, "k", roman);
      const double a = need(params, "a", roman);
      const double b = need(params, "b", roman);
      require(k >= 0.0 && k < 1.0, base + " requires k in [0,1)");
      require(a >= 0.0 && a < 0.5 && b >= 0.0 && b < 0.5, base + " requires a,b in [0,1/2)");
      const double beta = (1.0 - k) * a;
      return ImplicitRelation(
          base + "(k=" + fmt_num(k) + ",a=" + fmt_num(a) + ",b=" + fmt_num(b) + ")",
          [k, a, b](const SixTuple& r) {
            return r[0] - k * std::max({r[1], r[2], r[3]}) -
                   (1.0 - k) * (a * r[4] + b * r[5]);
          },
          true, true, true, ComparisonFunction::linear((k + beta) / (1.0 - beta)));
    }
    case CatalogId::XII: {
      const double a1 = need(params, "a1", roman);
      const double a2 = need(params, "a2", roman);
      const double a3 = need(params, "a3", roman);
      const double a4 = need(params, "a4", roman);
      require(a1 > 0.0, base + " requires a1 > 0");
      require(a2 >= 0.0 && a3 >= 0.0 && a4 >= 0.0, base + " requires a2,a3,a4 >= 0");
      require(a1 + a2 + a3 < 1.0, base + " requires a1+a2+a3 < 1");
      require(a1 + a4 < 1.0, base + " requires a1+a4 < 1");
      return ImplicitRelation(
          base + "(a=" + fmt_num(a1) + "," + fmt_num(a2) + "," + fmt_num(a3) + "," + fmt_num(a4) +
              ")",
          [a1, a2, a3, a4](const SixTuple& r) {
            return r[0] * r[0] - r[0] * (a1 * r[1] + a2 * r[2] + a3 * r[3]) - a4 * r[4] * r[5];
          },
          true, true, true, ComparisonFunction::linear((a1 + a2) / (1.0 - a3)));
    }
    case CatalogId::XIII: {
      const double k = need(params, "k", roman);
      require(k >= 0.0 && k < 1.0, base + " requires k in [0,1)");
      return ImplicitRelation(
          base + "(k=" + fmt_num(k) + ")",
          [k](const SixTuple& r) {
            if (r[0] + r[1] == 0.0) return r[0];
            return r[0] - k * r[1] * (r[4] + r[5]) / (r[0] + r[1]);
          },
          true, true, true, ComparisonFunction::linear(k));
    }
    case CatalogId::XIV: {
      const double a1 = need(params, "a1", roman);
      const double a2 = need(params, "a2", roman);
      const double a3 = need(params, "a3", roman);
      require(a1 >= 0.0 && a2 >= 0.0 && a3 >= 0.0, base + " requires a1,a2,a3 >= 0");
      require(a1 + 2.0 * a2 < 1.0, base + " requires a1+2a2 < 1");
      require(a1 + a3 < 1.0, base + " requires a1+a3 < 1");
      return ImplicitRelation(
          base + "(a=" + fmt_num(a1) + "," + fmt_num(a2) + "," + fmt_num(a3) + ")",
          [a1, a2, a3](const SixTuple& r) {
            return r[0] * r[0] - a1 * std::max({r[1] * r[1], r[2] * r[2], r[3] * r[3]}) -
                   a2 * std::max(r[2] * r[4], r[3] * r[5]) - a3 * r[4] * r[5];
          },
          true, true, true, ComparisonFunction::linear(std::sqrt(a1 + 2.0 * a2)));
    }
    case CatalogId::XV: {
      const double k = need(params, "k", roman);
      require(k >= 0.0 && k < 1.0 / 11.0, base + " requires k in [0,1/11)");
      auto cube = [](double v) { return v * v * v; };
      return ImplicitRelation(
          base + "(k=" + fmt_num(k) + ")",
          [k, cube](const SixTuple& r) {
            return cube(r[0]) - k * (cube(r[1]) + cube(r[2]) + cube(r[3]) + cube(r[4]) + cube(r[5]));
          },
          true, true, true, ComparisonFunction::linear(std::cbrt(11.0 * k)));
    }
    case CatalogId::XVI: {
      const double a1 = need(params, "a1", roman);
      const double a2 = need(params, "a2", roman);
      require(a1 > 0.0 && a2 > 0.0, base + " requires a1,a2 > 0");
      require(a1 < 2.0, base + " requires a1 < 2");
      return ImplicitRelation(
          base + "(a1=" + fmt_num(a1) + ",a2=" + fmt_num(a2) + ")",
          [a1, a2](const SixTuple& r) {
            if (r[1] + r[3] == 0.0) return r[0];
            return r[0] - a1 * r[1] * r[3] / (r[1] + r[3]) -
                   a2 * r[2] * r[5] / (r[4] + r[5] + 1.0);
          },
          true, true, true, ComparisonFunction::linear(std::max(a1 - 1.0, 0.0)));
    }
  }
  throw std::invalid_argument("unknown catalog id");
}

ImplicitRelation make_linear_combination(const std::array<double, 6>& c) {
  if (!(c[0] > 0.0))
    throw std::invalid_argument("linear combination requires a positive first coefficient");
  const bool monotone56 = c[4] <= 0.0 && c[5] <= 0.0;
  const double denom = c[0] + c[3] + c[4];
  const double numer = -(c[1] + c[2] + c[4]);
  bool g1 = false;
  std::optional<ComparisonFunction> phi;
  if (monotone56 && denom > 0.0) {
    const double slope = std::max(numer / denom, 0.0);
    if (slope < 1.0) {
      g1 = true;
      phi = ComparisonFunction::linear(slope);
    }
  }
  const bool g2 = c[0] + c[2] + c[5] > 0.0;
  const bool g3 = c[0] + c[1] + c[4] + c[5] > 0.0;
  std::string name = "linear-combination[";
  for (std::size_t i = 0; i < 6; ++i) name += (i ? "," : "") + fmt_num(c[i]);
  name += "]";
  return ImplicitRelation(
      name,
      [c](const SixTuple& r) {
        double acc = 0.0;
        for (std::size_t i = 0; i < 6; ++i) acc += c[i] * r[i];
        return acc;
      },
      g1, g2, g3, phi);
}

ImplicitRelation make_quotient_ratio(ComparisonFunction varphi) {
  ComparisonFunction phi = varphi;
  return ImplicitRelation(
      "quotient-ratio(varphi=" + phi.describe() + ")",
      [phi](const SixTuple& r) {
        if (r[2] + r[3] == 0.0) return r[0] - r[1];
        return r[0] - phi(r[1] * (r[4] + r[5]) / (r[2] + r[3]));
      },
      true, true, false, phi);
}

namespace {

ExplicitCondition wrap(int id, std::string summary,
                       std::function<bool(const SixTuple&)> satisfied, ImplicitRelation implicit) {
  return ExplicitCondition{id, std::move(summary), std::move(satisfied), std::move(implicit)};
}

std::optional<ComparisonFunction> linear_phi_if(double slope) {
  if (slope >= 0.0 && slope < 1.0) return ComparisonFunction::linear(slope);
  return std::nullopt;
}

}  // namespace

int explicit_condition_min_id() { return 16; }
int explicit_condition_max_id() { return 35; }

ExplicitCondition make_explicit_condition(int id, const Params& params,
                                          std::optional<ComparisonFunction> varphi) {
  const std::string form = "condition " + std::to_string(id);
  const char* cform = form.c_str();
  switch (id) {
    case 16: {
      const double k = need(params, "k", cform);
      require(k >= 0.0 && k < 1.0, form + " requires k in [0,1)");
      return wrap(
          id, "r1 <= k r2, k in [0,1)",
          [k](const SixTuple& r) { return r[0] <= k * r[1]; },
          ImplicitRelation(form + "(k=" + fmt_num(k) + ")",
                           [k](const SixTuple& r) { return r[0] - k * r[1]; }, true, true, true,
                           ComparisonFunction::linear(k)));
    }
    case 17: {
      if (!varphi) throw std::invalid_argument(form + " requires a comparison function varphi");
      ComparisonFunction phi = *varphi;
      return wrap(
          id, "r1 <= varphi(r2)",
          [phi](const SixTuple& r) { return r[0] <= phi(r[1]); },
          ImplicitRelation(form + "(varphi=" + phi.describe() + ")",
                           [phi](const SixTuple& r) { return r[0] - phi(r[1]); }, true, true,
                           true, phi));
    }
    case 18: {
      const double k = need(params, "k", cform);
      require(k >= 0.0 && k < 0.5, form + " requires k in [0,1/2)");
      return wrap(
          id, "r1 <= k (r3 + r4), k in [0,1/2)",
          [k](const SixTuple& r) { return r[0] <= k * (r[2] + r[3]); },
          ImplicitRelation(form + "(k=" + fmt_num(k) + ")",
                           [k](const SixTuple& r) { return r[0] - k * (r[2] + r[3]); }, true,
                           true, true, ComparisonFunction::linear(k / (1.0 - k))));
    }
    case 19: {
      const double k = need(params, "k", cform);
      require(k >= 0.0 && k < 0.5, form + " requires k in [0,1/2)");
      return wrap(
          id, "r1 <= k (r5 + r6), k in [0,1/2)",
          [k](const SixTuple& r) { return r[0] <= k * (r[4] + r[5]); },
          ImplicitRelation(form + "(k=" + fmt_num(k) + ")",
                           [k](const SixTuple& r) { return r[0] - k * (r[4] + r[5]); }, true,
                           true, true, ComparisonFunction::linear(k / (1.0 - k))));
    }
    case 20: {
      const double k = need(params, "k", cform);
      require(k >= 0.0 && k < 1.0, form + " requires k in [0,1)");
      return wrap(
          id, "r1 <= k max{r2, (r3+r4)/2, (r5+r6)/2}, k in [0,1)",
          [k](const SixTuple& r) {
            return r[0] <= k * std::max({r[1], (r[2] + r[3]) / 2.0, (r[4] + r[5]) / 2.0});
          },
          ImplicitRelation(
              form + "(k=" + fmt_num(k) + ")",
              [k](const SixTuple& r) {
                return r[0] - k * std::max({r[1], (r[2] + r[3]) / 2.0, (r[4] + r[5]) / 2.0});
              },
              true, true, true, ComparisonFunction::linear(k)));
    }
    case 21: {
      const double k = need(params, "k", cform);
      require(k >= 0.0 && k < 1.0, form + " requires k in [0,1)");
      return wrap(
          id, "r1 <= k max{r3, r4}, k in [0,1)",
          [k](const SixTuple& r) { return r[0] <= k * std::max(r[2], r[3]); },
          ImplicitRelation(form + "(k=" + fmt_num(k) + ")",
                           [k](const SixTuple& r) { return r[0] - k * std::max(r[2], r[3]); },
                           true, true, true, ComparisonFunction::linear(k)));
    }
    case 22: {
      const double a1 = need(params, "a1", cform);
      const double a2 = need(params, "a2", cform);
      const double a3 = need(params, "a3", cform);
      require(a1 >= 0.0 && a1 < 1.0 && a2 >= 0.0 && a2 < 1.0 && a3 >= 0.0 && a3 < 1.0,
              form + " requires a1,a2,a3 in [0,1)");
      require(a1 + 2.0 * a2 + 2.0 * a3 < 1.0, form + " requires a1+2a2+2a3 < 1");
      return wrap(
          id, "r1 <= a1 r2 + a2 (r3+r4) + a3 (r5+r6), a1+2a2+2a3 < 1",
          [a1, a2, a3](const SixTuple& r) {
            return r[0] <= a1 * r[1] + a2 * (r[2] + r[3]) + a3 * (r[4] + r[5]);
          },
          ImplicitRelation(
              form + "(a=" + fmt_num(a1) + "," + fmt_num(a2) + "," + fmt_num(a3) + ")",
              [a1, a2, a3](const SixTuple& r) {
                return r[0] - a1 * r[1] - a2 * (r[2] + r[3]) - a3 * (r[4] + r[5]);
              },
              true, true, true,
              ComparisonFunction::linear((a1 + a2 + a3) / (1.0 - a2 - a3))));
    }
    case 23: {
      const double k = need(params, "k", cform);
      require(k >= 0.0 && k < 1.0, form + " requires k in [0,1)");
      auto phi = linear_phi_if(k < 0.5 ? k / (1.0 - k) : 1.0);
      return wrap(
          id, "r1 <= k max{r2, (r3+r4)/2, r5, r6}, k in [0,1)",
          [k](const SixTuple& r) {
            return r[0] <= k * std::max({r[1], (r[2] + r[3]) / 2.0, r[4], r[5]});
          },
          ImplicitRelation(
              form + "(k=" + fmt_num(k) + ")",
              [k](const SixTuple& r) {
                return r[0] - k * std::max({r[1], (r[2] + r[3]) / 2.0, r[4], r[5]});
              },
              phi.has_value(), true, true, phi));
    }
    case 24: {
      const double k = need(params, "k", cform);
      const double big_l = need(params, "L", cform);
      require(k >= 0.0 && k < 1.0, form + " requires k in [0,1)");
      require(big_l >= 0.0, form + " requires L >= 0");
      return wrap(
          id, "r1 <= k r2 + L min{r3, r4, r5, r6}, k in [0,1), L >= 0",
          [k, big_l](const SixTuple& r) {
            return r[0] <= k * r[1] + big_l * std::min({r[2], r[3], r[4], r[5]});
          },
          ImplicitRelation(
              form + "(k=" + fmt_num(k) + ",L=" + fmt_num(big_l) + ")",
              [k, big_l](const SixTuple& r) {
                return r[0] - k * r[1] - big_l * std::min({r[2], r[3], r[4], r[5]});
              },
              true, true, true, ComparisonFunction::linear(k)));
    }
    case 25: {
      const double a1 = need(params, "a1", cform);
      const double a2 = need(params, "a2", cform);
      const double a3 = need(params, "a3", cform);
      const double a4 = need(params, "a4", cform);
      require(a1 >= 0.0 && a2 >= 0.0 && a3 >= 0.0 && a4 >= 0.0, form + " requires a1..a4 >= 0");
      require(a1 + a2 + a3 + 2.0 * a4 < 1.0, form + " requires a1+a2+a3+2a4 < 1");
      return wrap(
          id, "r1 <= a1 r2 + a2 r3 + a3 r4 + a4 (r5+r6), a1+a2+a3+2a4 < 1",
          [a1, a2, a3, a4](const SixTuple& r) {
            return r[0] <= a1 * r[1] + a2 * r[2] + a3 * r[3] + a4 * (r[4] + r[5]);
          },
          ImplicitRelation(
              form + "(a=" + fmt_num(a1) + "," + fmt_num(a2) + "," + fmt_num(a3) + "," +
                  fmt_num(a4) + ")",
              [a1, a2, a3, a4](const SixTuple& r) {
                return r[0] - a1 * r[1] - a2 * r[2] - a3 * r[3] - a4 * (r[4] + r[5]);
              },
              true, true, true,
              ComparisonFunction::linear((a1 + a2 + a4) / (1.0 - a3 - a4))));
    }
    case 26: {
      Params p = params;
      ImplicitRelation g = make_catalog(CatalogId::VII, p);
      const double k = need(params, "k", cform);
      const double big_l = need(params, "L", cform);
      return wrap(
          id, "r1 <= k max{r2, r3, r4, (r5+r6)/2} + L min{r3, r4, r5, r6}",
          [k, big_l](const SixTuple& r) {
            return r[0] <= k * std::max({r[1], r[2], r[3], (r[4] + r[5]) / 2.0}) +
                               big_l * std::min({r[2], r[3], r[4], r[5]});
          },
          std::move(g));
    }
    case 27: {
      ImplicitRelation g = make_catalog(CatalogId::VIII, params);
      const double k = need(params, "k", cform);
      return wrap(
          id, "r1 <= k max{r2, r3, r4, r5, r6}, k in [0,1/2)",
          [k](const SixTuple& r) { return r[0] <= k * max5(r[1], r[2], r[3], r[4], r[5]); },
          std::move(g));
    }
    case 28: {
      ImplicitRelation g = make_catalog(CatalogId::IX, params);
      const double a1 = need(params, "a1", cform);
      const double a2 = need(params, "a2", cform);
      const double a3 = need(params, "a3", cform);
      const double a4 = need(params, "a4", cform);
      const double a5 = need(params, "a5", cform);
      return wrap(
          id, "r1 <= a1 r2 + a2 r3 + a3 r4 + a4 r5 + a5 r6, sum < 1",
          [a1, a2, a3, a4, a5](const SixTuple& r) {
            return r[0] <= a1 * r[1] + a2 * r[2] + a3 * r[3] + a4 * r[4] + a5 * r[5];
          },
          std::move(g));
    }
    case 29: {
      ImplicitRelation g = make_catalog(CatalogId::X, params);
      const double k = need(params, "k", cform);
      return wrap(
          id, "r1 <= k max{r2, r3, r4, r5/2, r6/2}, k in [0,1)",
          [k](const SixTuple& r) {
            return r[0] <= k * max5(r[1], r[2], r[3], r[4] / 2.0, r[5] / 2.0);
          },
          std::move(g));
    }
    case 30: {
      ImplicitRelation g = make_catalog(CatalogId::XI, params);
      const double k = need(params, "k", cform);
      const double a = need(params, "a", cform);
      const double b = need(params, "b", cform);
      return wrap(
          id, "r1 <= k max{r2, r3, r4} + (1-k)(a r5 + b r6)",
          [k, a, b](const SixTuple& r) {
            return r[0] <=
                   k * std::max({r[1], r[2], r[3]}) + (1.0 - k) * (a * r[4] + b * r[5]);
          },
          std::move(g));
    }
    case 31: {
      ImplicitRelation g = make_catalog(CatalogId::XII, params);
      const double a1 = need(params, "a1", cform);
      const double a2 = need(params, "a2", cform);
      const double a3 = need(params, "a3", cform);
      const double a4 = need(params, "a4", cform);
      return wrap(
          id, "r1^2 <= r1 (a1 r2 + a2 r3 + a3 r4) + a4 r5 r6",
          [a1, a2, a3, a4](const SixTuple& r) {
            return r[0] * r[0] <=
                   r[0] * (a1 * r[1] + a2 * r[2] + a3 * r[3]) + a4 * r[4] * r[5];
          },
          std::move(g));
    }
    case 32: {
      ImplicitRelation g = make_catalog(CatalogId::XIII, params);
      const double k = need(params, "k", cform);
      return wrap(
          id, "r1 <= k r2 (r5+r6)/(r1+r2) when r1+r2 != 0, else r1 <= 0",
          [k](const SixTuple& r) {
            if (r[0] + r[1] == 0.0) return r[0] <= 0.0;
            return r[0] <= k * r[1] * (r[4] + r[5]) / (r[0] + r[1]);
          },
          std::move(g));
    }
    case 33: {
      const double a1 = need(params, "a1", cform);
      const double a2 = need(params, "a2", cform);
      const double a3 = need(params, "a3", cform);
      require(a1 > 0.0, form + " requires a1 > 0");
      require(a2 >= 0.0 && a3 >= 0.0, form + " requires a2,a3 >= 0");
      require(a1 + 2.0 * a2 < 1.0, form + " requires a1+2a2 < 1");
      require(a1 + a3 < 1.0, form + " requires a1+a3 < 1");
      return wrap(
          id, "r1^2 <= a1 max{r2^2, r3^2, r4^2} + a2 max{r3 r5, r4 r6} + a3 r5 r6",
          [a1, a2, a3](const SixTuple& r) {
            return r[0] * r[0] <=
                   a1 * std::max({r[1] * r[1], r[2] * r[2], r[3] * r[3]}) +
                       a2 * std::max(r[2] * r[4], r[3] * r[5]) + a3 * r[4] * r[5];
          },
          ImplicitRelation(
              form + "(a=" + fmt_num(a1) + "," + fmt_num(a2) + "," + fmt_num(a3) + ")",
              [a1, a2, a3](const SixTuple& r) {
                return r[0] * r[0] - a1 * std::max({r[1] * r[1], r[2] * r[2], r[3] * r[3]}) -
                       a2 * std::max(r[2] * r[4], r[3] * r[5]) - a3 * r[4] * r[5];
              },
              true, true, true, ComparisonFunction::linear(std::sqrt(a1 + 2.0 * a2))));
    }
    case 34: {
      const double k = need(params, "k", cform);
      require(k >= 0.0 && k < 1.0, form + " requires k in [0,1)");
      auto phi = linear_phi_if(std::cbrt(11.0 * k));
      auto cube = [](double v) { return v * v * v; };
      return wrap(
          id, "r1^3 <= k (r2^3 + r3^3 + r4^3 + r5^3 + r6^3), k in [0,1)",
          [k, cube](const SixTuple& r) {
            return cube(r[0]) <=
                   k * (cube(r[1]) + cube(r[2]) + cube(r[3]) + cube(r[4]) + cube(r[5]));
          },
          ImplicitRelation(
              form + "(k=" + fmt_num(k) + ")",
              [k, cube](const SixTuple& r) {
                return cube(r[0]) -
                       k * (cube(r[1]) + cube(r[2]) + cube(r[3]) + cube(r[4]) + cube(r[5]));
              },
              phi.has_value(), true, k < 1.0 / 3.0, phi));
    }
    case 35: {
      ImplicitRelation g = make_catalog(CatalogId::XVI, params);
      const double a1 = need(params, "a1", cform);
      const double a2 = need(params, "a2", cform);
      return wrap(
          id, "r1 <= a1 r2 r4/(r2+r4) + a2 r3 r6/(r5+r6+1) when r2+r4 != 0, else r1 <= 0",
          [a1, a2](const SixTuple& r) {
            if (r[1] + r[3] == 0.0) return r[0] <= 0.0;
            return r[0] <= a1 * r[1] * r[3] / (r[1] + r[3]) +
                               a2 * r[2] * r[5] / (r[4] + r[5] + 1.0);
          },
          std::move(g));
    }
    default:
      throw std::invalid_argument("explicit condition id must lie in [16,35]");
  }
}

std::vector<std::string> catalog_listing() {
  std::vector<std::string> out = {
      "I     r1 - k r2                                             k in [0,1)",
      "II    r1 - varphi(r2)                                       varphi in Phi, varphi(t) < t",
      "III   r1 - k (r3 + r4)                                      k in [0,1/2)",
      "IV    r1 - k (r5 + r6)                                      k in [0,1/2)",
      "V     r1 - a1 r2 - a2 (r3+r4) - a3 (r5+r6)                  a1+2a2+2a3 < 1",
      "VI    r1 - k r2 - L min{r3,r4,r5,r6}                        k in [0,1), L >= 0",
      "VII   r1 - k max{r2,r3,r4,(r5+r6)/2} - L min{r3,r4,r5,r6}   k in [0,1), L >= 0",
      "VIII  r1 - k max{r2,r3,r4,r5,r6}                            k in [0,1/2)",
      "IX    r1 - (a1 r2 + a2 r3 + a3 r4 + a4 r5 + a5 r6)          ai > 0, sum < 1",
      "X     r1 - k max{r2,r3,r4,r5/2,r6/2}                        k in [0,1)",
      "XI    r1 - k max{r2,r3,r4} - (1-k)(a r5 + b r6)             k in [0,1), a,b in [0,1/2)",
      "XII   r1^2 - r1 (a1 r2 + a2 r3 + a3 r4) - a4 r5 r6          a1 > 0, a1+a2+a3 < 1, a1+a4 < 1",
      "XIII  r1 - k r2 (r5+r6)/(r1+r2), guard r1+r2 = 0 -> r1      k in [0,1)",
      "XIV   r1^2 - a1 max{r2^2,r3^2,r4^2} - a2 max{r3 r5, r4 r6} - a3 r5 r6   a1+2a2 < 1, a1+a3 < 1",
      "XV    r1^3 - k (r2^3 + r3^3 + r4^3 + r5^3 + r6^3)           k in [0,1/11)",
      "XVI   r1 - a1 r2 r4/(r2+r4) - a2 r3 r6/(r5+r6+1), guard r2+r4 = 0 -> r1   a1,a2 > 0, a1 < 2",
  };
  for (int id = explicit_condition_min_id(); id <= explicit_condition_max_id(); ++id) {
    static const char* summaries[] = {
        "r1 <= k r2, k in [0,1)",
        "r1 <= varphi(r2)",
        "r1 <= k (r3 + r4), k in [0,1/2)",
        "r1 <= k (r5 + r6), k in [0,1/2)",
        "r1 <= k max{r2, (r3+r4)/2, (r5+r6)/2}, k in [0,1)",
        "r1 <= k max{r3, r4}, k in [0,1)",
        "r1 <= a1 r2 + a2 (r3+r4) + a3 (r5+r6), a1+2a2+2a3 < 1",
        "r1 <= k max{r2, (r3+r4)/2, r5, r6}, k in [0,1)",
        "r1 <= k r2 + L min{r3, r4, r5, r6}, k in [0,1), L >= 0",
        "r1 <= a1 r2 + a2 r3 + a3 r4 + a4 (r5+r6), a1+a2+a3+2a4 < 1",
        "r1 <= k max{r2, r3, r4, (r5+r6)/2} + L min{r3, r4, r5, r6}",
        "r1 <= k max{r2, r3, r4, r5, r6}, k in [0,1/2)",
        "r1 <= a1 r2 + a2 r3 + a3 r4 + a4 r5 + a5 r6, sum < 1",
        "r1 <= k max{r2, r3, r4, r5/2, r6/2}, k in [0,1)",
        "r1 <= k max{r2, r3, r4} + (1-k)(a r5 + b r6)",
        "r1^2 <= r1 (a1 r2 + a2 r3 + a3 r4) + a4 r5 r6",
        "r1 <= k r2 (r5+r6)/(r1+r2) when r1+r2 != 0, else r1 <= 0",
        "r1^2 <= a1 max{r2^2, r3^2, r4^2} + a2 max{r3 r5, r4 r6} + a3 r5 r6",
        "r1^3 <= k (r2^3 + r3^3 + r4^3 + r5^3 + r6^3), k in [0,1)",
        "r1 <= a1 r2 r4/(r2+r4) + a2 r3 r6/(r5+r6+1) when r2+r4 != 0, else r1 <= 0",
    };
    out.push_back("(" + std::to_string(id) + ")  " + summaries[id - 16]);
  }
  return out;
}

std::vector<double> default_check_grid() {
  std::vector<double> g;
  g.reserve(101);
  for (int i = 0; i <= 100; ++i) g.push_back(0.1 * i);
  return g;
}

G1Report check_g1(const ImplicitRelation& g, std::span<const double> grid,
                  std::span<const double> perturbations) {
  static const double default_perturbations[] = {0.5, 1.0, 2.5, 5.0};
  if (perturbations.empty()) perturbations = default_perturbations;

  G1Report report;
  report.phi_attached = g.phi().has_value();
  if (!report.phi_attached) {
    report.holds = false;
    report.violations.push_back({"no comparison function attached", {}, 0.0});
  }
  for (double r : grid) {
    for (double s : grid) {
      ++report.points_checked;
      const SixTuple base{r, s, s, r, r + s, 0.0};
      const double base_value = g(base);
      double prev = base_value;
      for (double delta : perturbations) {
        const double v5 = g({r, s, s, r, r + s + delta, 0.0});
        if (v5 > prev + kMargin) {
          report.holds = false;
          if (report.violations.size() < 10)
            report.violations.push_back(
                {"not non-increasing in argument 5", {r, s, s, r, r + s + delta, 0.0}, v5});
        }
        prev = v5;
      }
      prev = base_value;
      for (double delta : perturbations) {
        const double v6 = g({r, s, s, r, r + s, delta});
        if (v6 > prev + kMargin) {
          report.holds = false;
          if (report.violations.size() < 10)
            report.violations.push_back(
                {"not non-increasing in argument 6", {r, s, s, r, r + s, delta}, v6});
        }
        prev = v6;
      }
      if (base_value <= 0.0 && report.phi_attached) {
        const double allowed = (*g.phi())(s);
        report.worst_slack = std::max(report.worst_slack, r - allowed);
        if (r > allowed + kMargin) {
          report.holds = false;
          if (report.violations.size() < 10)
            report.violations.push_back(
                {"G(r,s,s,r,r+s,0) <= 0 but r > phi(s)", base, base_value});
        }
      }
    }
  }
  return report;
}

namespace {

SignReport check_sign_family(const ImplicitRelation& g, std::span<const double> grid,
                             const std::function<SixTuple(double)>& family) {
  SignReport report;
  bool first = true;
  for (double r : grid) {
    if (!(r > 0.0)) continue;
    const double v = g(family(r));
    if (first || v < report.worst_margin) {
      report.worst_margin = v;
      first = false;
    }
    if (!(v > kMargin)) {
      report.holds = false;
      if (!report.witness_r) report.witness_r = r;
    }
  }
  return report;
}

}  // namespace

SignReport check_g2(const ImplicitRelation& g, std::span<const double> grid) {
  return check_sign_family(g, grid,
                           [](double r) { return SixTuple{r, 0.0, r, 0.0, 0.0, r}; });
}

SignReport check_g3(const ImplicitRelation& g, std::span<const double> grid) {
  return check_sign_family(g, grid, [](double r) { return SixTuple{r, r, 0.0, 0.0, r, r}; });
}

}  // namespace relfix
