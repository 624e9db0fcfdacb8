#include "fjs/model_io.hpp"

#include <numeric>
#include <sstream>

#include "fjs/error.hpp"

namespace fjs::milp {

using fjs::to_string;

namespace {

std::string number(const Rational& r) {
  auto s = to_exact_decimal(r);
  if (s.empty()) {
    throw FjsError(ErrorCode::invalid_argument, "value " + to_string(r) + " has no finite decimal expansion");
  }
  return s;
}

/// Multiplier that turns every coefficient and the rhs of a row into
/// numbers with a finite decimal expansion.
std::int64_t row_scale(const Constraint& c) {
  bool needs = to_exact_decimal(c.rhs).empty();
  for (const Term& t : c.terms) needs = needs || to_exact_decimal(t.coef).empty();
  if (!needs) return 1;
  std::int64_t scale = c.rhs.denominator();
  for (const Term& t : c.terms) scale = std::lcm(scale, t.coef.denominator());
  return scale;
}

std::string sanitize(std::string name) {
  for (char& c : name) {
    if (c == ' ' || c == '\t') c = '_';
  }
  return name.empty() ? std::string("fjs") : name;
}

std::string header(const MilpModel& model) {
  return "Model " + sanitize(model.name()) + " (" + std::string(to_string(model.kind())) +
         "), L = " + to_string(model.stats().bound);
}

void write_terms(std::ostream& out, const MilpModel& model, const std::vector<Term>& terms, std::int64_t scale) {
  bool first = true;
  for (const Term& t : terms) {
    const Rational c = t.coef * scale;
    const std::string& name = model.variables()[t.var].name;
    const bool negative = c < 0;
    const Rational mag = negative ? -c : c;
    if (first) {
      out << (negative ? "- " : "");
    } else {
      out << (negative ? " - " : " + ");
    }
    if (mag != 1) out << number(mag) << ' ';
    out << name;
    first = false;
  }
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string mps_entry(const std::string& field2, const std::string& field3, const std::string& value) {
  return "    " + pad(field2, 8) + "  " + pad(field3, 8) + "  " + value + "\n";
}

}  // namespace

std::string write_lp(const MilpModel& model) {
  std::ostringstream out;
  out << "\\ " << header(model) << "\n";
  out << "Minimize\n obj: ";
  write_terms(out, model, model.objective(), 1);
  out << "\nSubject To\n";
  for (const Constraint& c : model.constraints()) {
    const std::int64_t scale = row_scale(c);
    out << ' ' << c.name << ": ";
    write_terms(out, model, c.terms, scale);
    const char* rel = c.relation == Relation::less_equal ? " <= " : c.relation == Relation::equal ? " = " : " >= ";
    out << rel << number(c.rhs * scale) << "\n";
  }
  out << "Bounds\n";
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::binary) continue;
    if (v.upper) {
      out << ' ' << number(v.lower) << " <= " << v.name << " <= " << number(*v.upper) << "\n";
    } else {
      out << ' ' << v.name << " >= " << number(v.lower) << "\n";
    }
  }
  out << "Binaries\n";
  for (const Variable& v : model.variables()) {
    if (v.kind == VarKind::binary) out << ' ' << v.name << "\n";
  }
  out << "End\n";
  return out.str();
}

std::string write_mps(const MilpModel& model) {
  const auto& vars = model.variables();
  const auto& rows = model.constraints();
  std::vector<std::int64_t> scale(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) scale[r] = row_scale(rows[r]);

  // column-major view of the coefficient matrix
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(vars.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const Term& t : rows[r].terms) columns[t.var].emplace_back(r, t.coef * scale[r]);
  }
  std::vector<Rational> obj(vars.size(), Rational(0));
  for (const Term& t : model.objective()) obj[t.var] += t.coef;

  std::ostringstream out;
  out << "* " << header(model) << "\n";
  out << "NAME          " << sanitize(model.name()) << "\n";
  out << "ROWS\n N  obj\n";
  for (const Constraint& c : rows) {
    const char* type = c.relation == Relation::less_equal ? "L" : c.relation == Relation::equal ? "E" : "G";
    out << ' ' << type << "  " << c.name << "\n";
  }
  out << "COLUMNS\n";
  bool in_marker = false;
  std::size_t marker = 0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const bool binary = vars[j].kind == VarKind::binary;
    if (binary != in_marker) {
      const std::string tag = binary ? "'INTORG'" : "'INTEND'";
      out << "    " << pad("MARKER" + std::to_string(marker), 8) << "  " << pad("'MARKER'", 8)
          << std::string(17, ' ') << tag << "\n";
      if (!binary) ++marker;
      in_marker = binary;
    }
    bool wrote = false;
    if (obj[j] != 0) {
      out << mps_entry(vars[j].name, "obj", number(obj[j]));
      wrote = true;
    }
    for (const auto& [r, coef] : columns[j]) {
      if (coef == 0) continue;
      out << mps_entry(vars[j].name, rows[r].name, number(coef));
      wrote = true;
    }
    if (!wrote) out << mps_entry(vars[j].name, "obj", "0");
  }
  if (in_marker) {
    out << "    " << pad("MARKER" + std::to_string(marker), 8) << "  " << pad("'MARKER'", 8) << std::string(17, ' ')
        << "'INTEND'\n";
  }
  out << "RHS\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Rational rhs = rows[r].rhs * scale[r];
    if (rhs != 0) out << mps_entry("RHS", rows[r].name, number(rhs));
  }
  out << "BOUNDS\n";
  for (const Variable& v : vars) {
    if (v.lower != 0) out << " LO BND       " << pad(v.name, 8) << "  " << number(v.lower) << "\n";
    if (v.upper) out << " UP BND       " << pad(v.name, 8) << "  " << number(*v.upper) << "\n";
  }
  out << "ENDATA\n";
  return out.str();
}

}  // namespace fjs::milp
