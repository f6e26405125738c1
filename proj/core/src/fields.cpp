#include "critgrad/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "critgrad/errors.hpp"

namespace critgrad {

namespace {

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Open-box membership with a snap tolerance so that nodes meant to sit on a
// face land outside regardless of rounding in the node coordinates.
bool strictly_inside(const Box& box, double x, double y) {
  const double tol = 1e-9 * (1.0 + box.diameter());
  bool in_x = x > box.x_lo + tol && x < box.x_hi - tol;
  if (box.dim == 1) return in_x;
  return in_x && y > box.y_lo + tol && y < box.y_hi - tol;
}

}  // namespace

FieldSpec FieldSpec::constant(double k) {
  FieldSpec s;
  s.kind = Kind::constant;
  s.value = k;
  return s;
}

FieldSpec FieldSpec::distance_power(double sigma) {
  FieldSpec s;
  s.kind = Kind::distance_power;
  s.exponent = sigma;
  return s;
}

FieldSpec FieldSpec::indicator(const Box& b) {
  FieldSpec s;
  s.kind = Kind::indicator;
  s.box = b;
  return s;
}

FieldSpec FieldSpec::sum(std::vector<FieldSpec> terms) {
  FieldSpec s;
  s.kind = Kind::sum;
  s.terms = std::move(terms);
  return s;
}

FieldSpec FieldSpec::product(std::vector<FieldSpec> terms) {
  FieldSpec s;
  s.kind = Kind::product;
  s.terms = std::move(terms);
  return s;
}

double FieldSpec::eval(double x, double y, const Domain& domain) const {
  switch (kind) {
    case Kind::constant:
      return value;
    case Kind::distance_power: {
      const double d = std::max(0.0, domain.boundary_distance(x, y));
      if (exponent == 1.0) return d;
      if (d == 0.0 && exponent < 0.0)
        return std::numeric_limits<double>::infinity();
      return std::pow(d, exponent);
    }
    case Kind::indicator:
      return strictly_inside(box, x, y) ? 1.0 : 0.0;
    case Kind::sum: {
      double s = 0.0;
      for (const auto& t : terms) s += t.eval(x, y, domain);
      return s;
    }
    case Kind::product: {
      double p = 1.0;
      for (const auto& t : terms) p *= t.eval(x, y, domain);
      return p;
    }
  }
  return 0.0;
}

std::string FieldSpec::str() const {
  switch (kind) {
    case Kind::constant:
      return fmt_num(value);
    case Kind::distance_power:
      return exponent == 1.0 ? "delta" : "delta^" + fmt_num(exponent);
    case Kind::indicator: {
      std::string s = "indicator(" + fmt_num(box.x_lo) + "," + fmt_num(box.x_hi);
      if (box.dim == 2) s += "," + fmt_num(box.y_lo) + "," + fmt_num(box.y_hi);
      return s + ")";
    }
    case Kind::sum: {
      std::string s;
      for (size_t i = 0; i < terms.size(); ++i) {
        if (i) s += " + ";
        s += terms[i].str();
      }
      return s;
    }
    case Kind::product: {
      std::string s;
      for (size_t i = 0; i < terms.size(); ++i) {
        if (i) s += "*";
        const bool paren = terms[i].kind == Kind::sum;
        s += paren ? "(" + terms[i].str() + ")" : terms[i].str();
      }
      return s;
    }
  }
  return {};
}

void FieldSpec::collect_faces(std::vector<double>& x_faces, std::vector<double>& y_faces) const {
  if (kind == Kind::indicator) {
    x_faces.push_back(box.x_lo);
    x_faces.push_back(box.x_hi);
    if (box.dim == 2) {
      y_faces.push_back(box.y_lo);
      y_faces.push_back(box.y_hi);
    }
  }
  for (const auto& t : terms) t.collect_faces(x_faces, y_faces);
}

void FieldSpec::validate_boxes(const Domain& domain) const {
  if (kind == Kind::indicator) {
    const double tol = 1e-9 * (1.0 + domain.diameter());
    if (box.dim != domain.dim())
      throw std::invalid_argument("field spec: indicator dimension does not match domain");
    if (!domain.box.contains_box(box, tol))
      throw std::invalid_argument("field spec: indicator box " + box.str() +
                                  " lies outside the domain " + domain.box.str());
  }
  for (const auto& t : terms) t.validate_boxes(domain);
}

namespace {

struct SpecParser {
  std::string_view s;
  size_t pos = 0;
  int dim;

  explicit SpecParser(std::string_view text, int d) : s(text), dim(d) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ConfigError("field spec: " + what + " at position " + std::to_string(pos) +
                      " in \"" + std::string(s) + "\"");
  }
  double number() {
    skip_ws();
    const char* begin = s.data() + pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("expected a number");
    pos += static_cast<size_t>(end - begin);
    return v;
  }
  bool keyword(std::string_view kw) {
    skip_ws();
    if (s.substr(pos, kw.size()) == kw) {
      pos += kw.size();
      return true;
    }
    return false;
  }

  FieldSpec factor() {
    skip_ws();
    if (eat('(')) {
      FieldSpec e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (keyword("delta")) {
      double sigma = 1.0;
      if (eat('^')) sigma = number();
      return FieldSpec::distance_power(sigma);
    }
    if (keyword("indicator") || keyword("chi")) {
      if (!eat('(')) fail("expected '(' after indicator");
      const double a = number();
      if (!eat(',')) fail("expected ','");
      const double b = number();
      Box box;
      if (dim == 1) {
        box = Box::interval(a, b);
      } else {
        if (!eat(',')) fail("2D indicator needs four numbers");
        const double c = number();
        if (!eat(',')) fail("expected ','");
        const double d = number();
        box = Box::rectangle(a, b, c, d);
      }
      if (!eat(')')) fail("expected ')'");
      return FieldSpec::indicator(box);
    }
    const char c = peek();
    if (c == '-' || c == '+' || c == '.' || std::isdigit(static_cast<unsigned char>(c)))
      return FieldSpec::constant(number());
    fail("expected a factor");
  }

  FieldSpec term() {
    FieldSpec f = factor();
    std::vector<FieldSpec> factors;
    while (peek() == '*') {
      eat('*');
      if (factors.empty()) factors.push_back(std::move(f));
      factors.push_back(factor());
    }
    if (factors.empty()) return f;
    return FieldSpec::product(std::move(factors));
  }

  FieldSpec expr() {
    FieldSpec t = term();
    std::vector<FieldSpec> terms;
    while (true) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos;
      FieldSpec next = term();
      if (c == '-')
        next = FieldSpec::product({FieldSpec::constant(-1.0), std::move(next)});
      if (terms.empty()) terms.push_back(std::move(t));
      terms.push_back(std::move(next));
    }
    if (terms.empty()) return t;
    return FieldSpec::sum(std::move(terms));
  }

  FieldSpec parse() {
    FieldSpec e = expr();
    skip_ws();
    if (pos != s.size()) fail("trailing characters");
    return e;
  }
};

}  // namespace

FieldSpec parse_field_spec(std::string_view text, int dim) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("parse_field_spec: dim must be 1 or 2");
  return SpecParser(text, dim).parse();
}

CoefficientField make_field(const FieldSpec& spec, const Grid& grid) {
  spec.validate_boxes(grid.domain());
  CoefficientField f;
  f.spec = spec;
  f.values.resize(grid.num_nodes());
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  bool any = false;
  for (int id = 0; id < grid.num_nodes(); ++id) {
    const double v = spec.eval(grid.node_x(id), grid.node_y(id), grid.domain());
    f.values[id] = v;
    f.max_abs = std::max(f.max_abs, std::abs(v));
    if (std::abs(v) > CoefficientField::support_tol) {
      const double x = grid.node_x(id), y = grid.node_y(id);
      if (!any) {
        x_lo = x_hi = x;
        y_lo = y_hi = y;
        any = true;
      } else {
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
      }
    }
  }
  if (any) {
    Box b;
    b.dim = grid.dim();
    b.x_lo = x_lo;
    b.x_hi = std::max(x_hi, x_lo + CoefficientField::support_tol);
    b.y_lo = y_lo;
    b.y_hi = grid.dim() == 2 ? std::max(y_hi, y_lo + CoefficientField::support_tol) : 0.0;
    f.support = b;
  }
  return f;
}

CoefficientField make_field(std::string_view spec_text, const Grid& grid) {
  return make_field(parse_field_spec(spec_text, grid.dim()), grid);
}

CoefficientField make_field_from_values(std::vector<double> values, const Grid& grid) {
  if (values.size() != static_cast<size_t>(grid.num_nodes()))
    throw std::invalid_argument("make_field_from_values: size mismatch");
  CoefficientField f;
  f.values = std::move(values);
  // No symbolic form; keep a constant placeholder spec so str() stays usable.
  f.spec = FieldSpec::constant(std::numeric_limits<double>::quiet_NaN());
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  bool any = false;
  for (int id = 0; id < grid.num_nodes(); ++id) {
    const double v = f.values[id];
    f.max_abs = std::max(f.max_abs, std::abs(v));
    if (std::abs(v) > CoefficientField::support_tol) {
      const double x = grid.node_x(id), y = grid.node_y(id);
      if (!any) {
        x_lo = x_hi = x;
        y_lo = y_hi = y;
        any = true;
      } else {
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
      }
    }
  }
  if (any) {
    Box b;
    b.dim = grid.dim();
    b.x_lo = x_lo;
    b.x_hi = std::max(x_hi, x_lo + CoefficientField::support_tol);
    b.y_lo = y_lo;
    b.y_hi = grid.dim() == 2 ? std::max(y_hi, y_lo + CoefficientField::support_tol) : 0.0;
    f.support = b;
  }
  return f;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::not_applicable:
      return "not-applicable";
  }
  return "?";
}

namespace {

constexpr double kZeroTol = 1e-12;

HypothesisCheck check_data_signs(const CoefficientField& mu, const CoefficientField& c,
                                 const CoefficientField& h, const Grid& grid) {
  HypothesisCheck out;
  out.verdict = Verdict::holds;
  const CoefficientField* fields[3] = {&mu, &c, &h};
  const char* names[3] = {"mu", "c", "h"};
  std::string detail;
  for (int k = 0; k < 3; ++k) {
    double min_v = 0.0, max_v = 0.0;
    int min_node = 0;
    for (int id = 0; id < grid.num_nodes(); ++id) {
      const double v = fields[k]->values[id];
      if (v < min_v) {
        min_v = v;
        min_node = id;
      }
      max_v = std::max(max_v, v);
    }
    if (min_v < -kZeroTol) {
      out.verdict = Verdict::fails;
      detail += std::string(names[k]) + " negative at x=" + fmt_num(grid.node_x(min_node)) + "; ";
      out.x0 = grid.node_x(min_node);
      out.y0 = grid.node_y(min_node);
    } else if (max_v <= kZeroTol) {
      out.verdict = Verdict::fails;
      detail += std::string(names[k]) + " vanishes identically; ";
    }
  }
  out.detail = detail.empty() ? "mu, c, h nonnegative and nontrivial" : detail;
  return out;
}

HypothesisCheck check_intersecting_supports(const CoefficientField& mu,
                                            const CoefficientField& c, const Grid& grid) {
  HypothesisCheck out;
  const int n = grid.num_nodes();
  std::vector<double> m(n);
  for (int id = 0; id < n; ++id) m[id] = std::min(mu.values[id], c.values[id]);

  const double h = grid.h();
  const double rho_min = 2.0 * h;
  // Offsets covering the minimal ball; the largest eta over all admissible
  // balls is attained at the smallest radius.
  std::vector<std::pair<int, int>> offsets;
  const int ri = static_cast<int>(std::floor(rho_min / grid.hx() + 1e-12));
  const int rj = grid.dim() == 2 ? static_cast<int>(std::floor(rho_min / grid.hy() + 1e-12)) : 0;
  for (int dj = -rj; dj <= rj; ++dj)
    for (int di = -ri; di <= ri; ++di) {
      const double dx = di * grid.hx();
      const double dy = grid.dim() == 2 ? dj * grid.hy() : 0.0;
      if (dx * dx + dy * dy <= rho_min * rho_min * (1.0 + 1e-12))
        offsets.emplace_back(di, dj);
    }

  int best = -1;
  double best_eta = -1.0;
  for (int k = 0; k < grid.num_interior(); ++k) {
    const int id = grid.interior_node(k);
    if (grid.delta(id) < rho_min * (1.0 - 1e-12)) continue;
    const int i = grid.node_i(id), j = grid.node_j(id);
    double eta = std::numeric_limits<double>::infinity();
    for (auto [di, dj] : offsets) {
      const int ii = i + di, jj = j + dj;
      if (ii < 0 || ii >= grid.nx() || jj < 0 || jj >= grid.ny()) {
        eta = -1.0;
        break;
      }
      eta = std::min(eta, m[grid.node(ii, jj)]);
    }
    if (eta > best_eta || (eta == best_eta && best >= 0 && grid.delta(id) > grid.delta(best))) {
      best_eta = eta;
      best = id;
    }
  }
  if (best < 0) {
    out.verdict = Verdict::fails;
    out.detail = "grid too coarse for a ball of radius 2h inside the domain";
    return out;
  }
  if (best_eta <= kZeroTol) {
    out.verdict = Verdict::fails;
    out.eta = std::max(0.0, best_eta);
    out.x0 = grid.node_x(best);
    out.y0 = grid.node_y(best);
    out.rho = rho_min;
    out.detail = "no grid ball of radius 2h with min(mu,c) > 0";
    return out;
  }

  // Grow the radius at the best center while the level is preserved.
  const double thresh = best_eta - 1e-12 * std::max(1.0, best_eta);
  const double cx = grid.node_x(best), cy = grid.node_y(best);
  std::vector<std::pair<double, int>> by_dist;
  by_dist.reserve(n);
  for (int id = 0; id < n; ++id) {
    const double dx = grid.node_x(id) - cx;
    const double dy = grid.dim() == 2 ? grid.node_y(id) - cy : 0.0;
    by_dist.emplace_back(std::sqrt(dx * dx + dy * dy), id);
  }
  std::sort(by_dist.begin(), by_dist.end());
  double rho = grid.delta(best);
  for (const auto& [dist, id] : by_dist) {
    if (dist > grid.delta(best)) break;
    if (m[id] < thresh) {
      rho = std::min(rho, dist * (1.0 - 1e-9));
      break;
    }
  }
  out.verdict = rho >= rho_min * (1.0 - 1e-9) ? Verdict::holds : Verdict::fails;
  out.eta = best_eta;
  out.rho = rho;
  out.x0 = cx;
  out.y0 = cy;
  out.detail = "ball witness B(x0,rho) with min(mu,c) >= eta";
  return out;
}

HypothesisCheck check_mu_uniform(const CoefficientField& mu, const CoefficientField& c,
                                 const Grid& grid, const AssumptionParams& params) {
  HypothesisCheck out;
  if (!params.omega) {
    out.detail = "no sub-box supplied";
    return out;
  }
  const Box& box = *params.omega;
  const double tol = 1e-9 * (1.0 + grid.domain().diameter());
  bool contained = true;
  double mu0 = std::numeric_limits<double>::infinity();
  bool any_in_box = false;
  for (int id = 0; id < grid.num_nodes(); ++id) {
    const double x = grid.node_x(id), y = grid.node_y(id);
    const bool in_box = box.contains(x, y, tol);
    if (std::abs(c.values[id]) > CoefficientField::support_tol && !in_box) contained = false;
    if (in_box) {
      any_in_box = true;
      mu0 = std::min(mu0, mu.values[id]);
    }
  }
  if (!any_in_box) {
    out.verdict = Verdict::fails;
    out.detail = "sub-box contains no grid nodes";
    return out;
  }
  out.constant = mu0;
  if (!contained) {
    out.verdict = Verdict::fails;
    out.detail = "supp(c) reaches outside the sub-box";
  } else if (mu0 <= kZeroTol) {
    out.verdict = Verdict::fails;
    out.detail = "mu not uniformly positive on the sub-box";
  } else {
    out.verdict = Verdict::holds;
    out.detail = "mu >= mu0 on the sub-box and supp(c) inside it";
  }
  return out;
}

HypothesisCheck check_decay(const CoefficientField& c, const Grid& grid, double sigma,
                            const std::optional<Box>& omega) {
  HypothesisCheck out;
  out.sigma = sigma;
  double c1 = 0.0;
  bool impossible = false;
  bool outside_support = false;
  for (int id = 0; id < grid.num_nodes(); ++id) {
    const double x = grid.node_x(id), y = grid.node_y(id);
    double dist;
    if (omega) {
      if (!strictly_inside(*omega, x, y)) {
        if (std::abs(c.values[id]) > CoefficientField::support_tol) outside_support = true;
        continue;
      }
      dist = std::min(x - omega->x_lo, omega->x_hi - x);
      if (omega->dim == 2) dist = std::min({dist, y - omega->y_lo, omega->y_hi - y});
    } else {
      dist = grid.delta(id);
      if (dist <= 0.0) {
        if (std::abs(c.values[id]) > CoefficientField::support_tol) impossible = true;
        continue;
      }
    }
    c1 = std::max(c1, c.values[id] / std::pow(dist, sigma));
  }
  out.constant = c1;
  if (impossible) {
    out.verdict = Verdict::fails;
    out.detail = "c does not vanish on the boundary; no finite constant works";
  } else {
    out.verdict = Verdict::holds;
    out.detail = "least constant over the grid";
    if (outside_support) out.detail += "; note: supp(c) reaches outside the sub-box";
  }
  return out;
}

HypothesisCheck check_compact_support(const CoefficientField& mu, const Grid& grid) {
  HypothesisCheck out;
  const double cell = grid.dim() == 1 ? grid.hx() : std::min(grid.hx(), grid.hy());
  bool edge_clear = true;
  double margin = std::numeric_limits<double>::infinity();
  for (int id = 0; id < grid.num_nodes(); ++id) {
    const bool near_edge = grid.delta(id) <= cell * (1.0 + 1e-9);
    const bool active = std::abs(mu.values[id]) > CoefficientField::support_tol;
    if (active) margin = std::min(margin, grid.delta(id));
    if (near_edge && active) edge_clear = false;
  }
  out.margin = std::isfinite(margin) ? margin : grid.domain().diameter();
  out.verdict =
      edge_clear && out.margin >= cell * (1.0 - 1e-9) ? Verdict::holds : Verdict::fails;
  out.detail = edge_clear ? "support margin to the boundary recorded"
                          : "field active at boundary-adjacent nodes";
  return out;
}

HypothesisCheck check_boundary_growth(const CoefficientField& mu, const Grid& grid,
                                      const AssumptionParams& params) {
  HypothesisCheck out;
  out.sigma = params.sigma;
  const double width = params.collar_fraction * grid.domain().diameter();
  double c1 = std::numeric_limits<double>::infinity();
  int count = 0;
  for (int k = 0; k < grid.num_interior(); ++k) {
    const int id = grid.interior_node(k);
    const double d = grid.delta(id);
    if (d >= width) continue;
    ++count;
    c1 = std::min(c1, mu.values[id] / std::pow(d, params.sigma));
  }
  if (count == 0) {
    out.detail = "collar contains no interior nodes at this resolution";
    return out;
  }
  out.constant = c1;
  out.rho = width;
  out.verdict = c1 > kZeroTol ? Verdict::holds : Verdict::fails;
  out.detail = "least mu/delta^sigma over the collar delta < " + fmt_num(width);
  if (params.sigma >= 2.0) out.detail += "; sigma >= 2 is outside the hypothesis range";
  return out;
}

}  // namespace

AssumptionReport check_assumptions(const CoefficientField& mu, const CoefficientField& c,
                                   const CoefficientField& h, const Grid& grid,
                                   const AssumptionParams& params) {
  const size_t n = static_cast<size_t>(grid.num_nodes());
  if (mu.values.size() != n || c.values.size() != n || h.values.size() != n)
    throw std::invalid_argument("check_assumptions: fields must live on the given grid");
  AssumptionReport report;
  report.data_signs = check_data_signs(mu, c, h, grid);
  report.intersecting_supports = check_intersecting_supports(mu, c, grid);
  report.mu_uniform_on_c_support = check_mu_uniform(mu, c, grid, params);
  report.c_decay_subdomain =
      params.omega ? check_decay(c, grid, params.sigma, params.omega) : HypothesisCheck{};
  if (!params.omega) report.c_decay_subdomain.detail = "no sub-box supplied";
  report.c_decay = check_decay(c, grid, params.sigma, std::nullopt);
  report.mu_compact_support = check_compact_support(mu, grid);
  report.mu_boundary_growth = check_boundary_growth(mu, grid, params);
  return report;
}

}  // namespace critgrad
