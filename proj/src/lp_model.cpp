#include "shadowlp/lp_model.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "shadowlp/errors.hpp"

namespace shadowlp {

void InputLP::validate() const {
  if (num_cols == 0) throw EmptyProblem();
  if (a.rows() != num_rows || a.cols() != num_cols || b.size() != num_rows ||
      lower.size() != num_cols || upper.size() != num_cols ||
      objective.size() != num_cols)
    throw DimensionMismatch("InputLP field sizes disagree");
  for (std::size_t i = 0; i < num_rows; ++i) {
    if (!std::isfinite(b[i])) throw DimensionMismatch("non-finite rhs entry");
    for (std::size_t j = 0; j < num_cols; ++j)
      if (!std::isfinite(a(i, j))) throw DimensionMismatch("non-finite matrix entry");
  }
  for (std::size_t j = 0; j < num_cols; ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) ||
        !std::isfinite(objective[j]))
      throw DimensionMismatch("non-finite bound or objective entry");
    if (!(lower[j] < upper[j])) throw CrossedBounds(j);
  }
}

double FoldedLP::max_violation(const Vector& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < rows(); ++r)
    worst = std::max(worst, dot(a_bar.row(r), x) - b_bar[r]);
  return worst;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

double parse_number(const std::string& tok, long line_no) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw SyntaxError(line_no, "bad number '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    throw SyntaxError(line_no, "bad number '" + tok + "'");
  }
}

struct Builder {
  const MpsOptions& options;
  std::vector<std::string> row_names;   // constraint rows only
  std::vector<char> row_types;          // 'L' or 'G'
  std::map<std::string, std::size_t> row_index;
  std::string objective_row;
  std::vector<std::string> col_names;
  std::map<std::string, std::size_t> col_index;
  std::vector<std::map<std::size_t, double>> columns;  // per column: row -> coef
  std::vector<double> objective;
  std::vector<double> rhs_by_row;
  std::vector<double> lower, upper;
  std::vector<bool> has_lower, has_upper, lower_is_minf;
  bool maximize = false;

  explicit Builder(const MpsOptions& opts) : options(opts) {}

  std::size_t column(const std::string& name, long line_no) {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    if (row_index.count(name) || name == objective_row)
      throw SyntaxError(line_no, "name '" + name + "' used for both row and column");
    std::size_t j = col_names.size();
    col_index.emplace(name, j);
    col_names.push_back(name);
    columns.emplace_back();
    objective.push_back(0.0);
    lower.push_back(0.0);
    upper.push_back(0.0);
    has_lower.push_back(false);
    has_upper.push_back(false);
    lower_is_minf.push_back(false);
    return j;
  }

  InputLP finish() {
    if (col_names.empty()) throw EmptyProblem();
    const std::size_t n = row_names.size();
    const std::size_t d = col_names.size();
    InputLP lp;
    lp.num_rows = n;
    lp.num_cols = d;
    lp.a = Matrix(n, d, 0.0);
    lp.b = rhs_by_row;
    lp.row_names = row_names;
    lp.col_names = col_names;
    lp.lower.resize(d);
    lp.upper.resize(d);
    lp.objective.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& [i, v] : columns[j]) lp.a(i, j) = v;
      lp.objective[j] = maximize ? objective[j] : -objective[j];
      lp.lower[j] = has_lower[j] ? lower[j] : 0.0;
      if (lower_is_minf[j]) {
        lp.lower[j] = -options.big_bound;
        lp.synthetic_bounds.push_back(j);
      }
      if (has_upper[j]) {
        lp.upper[j] = upper[j];
      } else {
        lp.upper[j] = options.big_bound;
        if (lower_is_minf[j]) continue;  // already flagged
        lp.synthetic_bounds.push_back(j);
      }
    }
    // G-rows were stored with their raw sign; flip them into <= form.
    for (std::size_t i = 0; i < n; ++i) {
      if (row_types[i] == 'G') {
        for (std::size_t j = 0; j < d; ++j) lp.a(i, j) = -lp.a(i, j);
        lp.b[i] = -lp.b[i];
      }
    }
    for (std::size_t j = 0; j < d; ++j) {
      if (lp.lower[j] == lp.upper[j])
        throw UnsupportedEquality("column '" + lp.col_names[j] + "' is fixed");
      if (lp.lower[j] > lp.upper[j]) throw CrossedBounds(j);
    }
    lp.validate();
    return lp;
  }
};

enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Bounds, EndData };

}  // namespace

InputLP parse_mps(std::istream& text, const MpsOptions& options) {
  Builder bld(options);
  Section section = Section::None;
  std::string line;
  long line_no = 0;

  while (std::getline(text, line)) {
    ++line_no;
    if (line.empty() || line[0] == '*') continue;
    const bool is_header = !std::isspace(static_cast<unsigned char>(line[0]));
    auto toks = tokenize(line);
    if (toks.empty()) continue;

    if (is_header) {
      const std::string& head = toks[0];
      if (head == "NAME") {
        section = Section::Name;
      } else if (head == "OBJSENSE") {
        section = Section::ObjSense;
        if (toks.size() > 1) bld.maximize = (toks[1] == "MAX" || toks[1] == "MAXIMIZE");
      } else if (head == "ROWS") {
        section = Section::Rows;
      } else if (head == "COLUMNS") {
        section = Section::Columns;
      } else if (head == "RHS") {
        section = Section::Rhs;
      } else if (head == "BOUNDS") {
        section = Section::Bounds;
      } else if (head == "RANGES") {
        throw SyntaxError(line_no, "RANGES section not supported");
      } else if (head == "SOS") {
        throw SyntaxError(line_no, "SOS section not supported");
      } else if (head == "ENDATA") {
        section = Section::EndData;
        break;
      } else {
        throw SyntaxError(line_no, "unknown section '" + head + "'");
      }
      continue;
    }

    switch (section) {
      case Section::Name:
        break;
      case Section::ObjSense:
        bld.maximize = (toks[0] == "MAX" || toks[0] == "MAXIMIZE");
        break;
      case Section::Rows: {
        if (toks.size() != 2) throw SyntaxError(line_no, "ROWS line needs type and name");
        const std::string& type = toks[0];
        const std::string& name = toks[1];
        if (bld.row_index.count(name) || name == bld.objective_row)
          throw SyntaxError(line_no, "duplicate row '" + name + "'");
        if (type == "N") {
          if (bld.objective_row.empty()) bld.objective_row = name;
          // further free rows are ignored, as most readers do
        } else if (type == "L" || type == "G") {
          bld.row_index.emplace(name, bld.row_names.size());
          bld.row_names.push_back(name);
          bld.row_types.push_back(type[0]);
          bld.rhs_by_row.push_back(0.0);
        } else if (type == "E") {
          throw UnsupportedEquality("row '" + name + "'");
        } else {
          throw SyntaxError(line_no, "unknown row type '" + type + "'");
        }
        break;
      }
      case Section::Columns: {
        // integrality markers are skipped; the LP relaxation is solved
        if (toks.size() >= 3 && toks[1] == "'MARKER'") {
          if (toks[2] != "'INTORG'" && toks[2] != "'INTEND'")
            throw SyntaxError(line_no, "unknown marker " + toks[2]);
          break;
        }
        if (toks.size() != 3 && toks.size() != 5)
          throw SyntaxError(line_no, "COLUMNS line needs 1 or 2 (row, value) pairs");
        std::size_t j = bld.column(toks[0], line_no);
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          const std::string& row = toks[k];
          double v = parse_number(toks[k + 1], line_no);
          if (row == bld.objective_row) {
            bld.objective[j] += v;
          } else {
            auto it = bld.row_index.find(row);
            if (it == bld.row_index.end())
              throw SyntaxError(line_no, "unknown row '" + row + "'");
            bld.columns[j][it->second] += v;
          }
        }
        break;
      }
      case Section::Rhs: {
        if (toks.size() != 3 && toks.size() != 5)
          throw SyntaxError(line_no, "RHS line needs 1 or 2 (row, value) pairs");
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          const std::string& row = toks[k];
          double v = parse_number(toks[k + 1], line_no);
          if (row == bld.objective_row) continue;  // objective constant, unused
          auto it = bld.row_index.find(row);
          if (it == bld.row_index.end())
            throw SyntaxError(line_no, "unknown row '" + row + "'");
          bld.rhs_by_row[it->second] = v;
        }
        break;
      }
      case Section::Bounds: {
        if (toks.size() < 3) throw SyntaxError(line_no, "BOUNDS line too short");
        const std::string& code = toks[0];
        std::size_t j = bld.column(toks[2], line_no);
        if (code == "UP") {
          if (toks.size() != 4) throw SyntaxError(line_no, "UP bound needs a value");
          bld.upper[j] = parse_number(toks[3], line_no);
          bld.has_upper[j] = true;
        } else if (code == "LO") {
          if (toks.size() != 4) throw SyntaxError(line_no, "LO bound needs a value");
          bld.lower[j] = parse_number(toks[3], line_no);
          bld.has_lower[j] = true;
          bld.lower_is_minf[j] = false;
        } else if (code == "FX" || code == "BV") {
          throw UnsupportedEquality("bound " + code + " on column '" + toks[2] + "'");
        } else if (code == "MI" || code == "FR") {
          bld.lower_is_minf[j] = true;
        } else if (code == "PL") {
          // default upper; nothing to record
        } else {
          throw SyntaxError(line_no, "unknown bound code '" + code + "'");
        }
        break;
      }
      case Section::None:
        throw SyntaxError(line_no, "data before any section header");
      case Section::EndData:
        break;
    }
  }
  return bld.finish();
}

InputLP parse_mps(const std::string& text, const MpsOptions& options) {
  std::istringstream in(text);
  return parse_mps(in, options);
}

namespace {
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string emit_mps(const InputLP& lp) {
  std::ostringstream out;
  out << "NAME          MODEL\n";
  out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N  OBJ\n";
  for (const auto& name : lp.row_names) out << " L  " << name << "\n";
  out << "COLUMNS\n";
  for (std::size_t j = 0; j < lp.num_cols; ++j) {
    const std::string& col = lp.col_names[j];
    if (lp.objective[j] != 0.0)
      out << "    " << col << "  OBJ  " << fmt(lp.objective[j]) << "\n";
    for (std::size_t i = 0; i < lp.num_rows; ++i)
      if (lp.a(i, j) != 0.0)
        out << "    " << col << "  " << lp.row_names[i] << "  " << fmt(lp.a(i, j)) << "\n";
  }
  out << "RHS\n";
  for (std::size_t i = 0; i < lp.num_rows; ++i)
    out << "    RHS  " << lp.row_names[i] << "  " << fmt(lp.b[i]) << "\n";
  out << "BOUNDS\n";
  for (std::size_t j = 0; j < lp.num_cols; ++j) {
    out << " LO BND  " << lp.col_names[j] << "  " << fmt(lp.lower[j]) << "\n";
    out << " UP BND  " << lp.col_names[j] << "  " << fmt(lp.upper[j]) << "\n";
  }
  out << "ENDATA\n";
  return out.str();
}

std::string lp_to_json(const InputLP& lp) {
  nlohmann::ordered_json j;
  j["num_rows"] = lp.num_rows;
  j["num_cols"] = lp.num_cols;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < lp.num_rows; ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < lp.num_cols; ++c) row.push_back(lp.a(i, c));
    rows.push_back(row);
  }
  j["a"] = rows;
  j["b"] = lp.b;
  j["lower"] = lp.lower;
  j["upper"] = lp.upper;
  j["objective"] = lp.objective;
  j["row_names"] = lp.row_names;
  j["col_names"] = lp.col_names;
  j["synthetic_bounds"] = lp.synthetic_bounds;
  return j.dump(2);
}

NormalizedLP normalize_rows(const InputLP& lp) {
  NormalizedLP out;
  out.lp = lp;
  out.row_scales.resize(lp.num_rows);
  for (std::size_t i = 0; i < lp.num_rows; ++i) {
    double s = norm2(lp.a.row(i));
    if (s < 1e-300) throw ZeroRow(i);
    out.row_scales[i] = s;
    for (std::size_t j = 0; j < lp.num_cols; ++j) out.lp.a(i, j) = lp.a(i, j) / s;
    out.lp.b[i] = lp.b[i] / s;
  }
  return out;
}

FoldedLP fold_bounds(const NormalizedLP& lp, const Vector& perturbed_lower,
                     const Vector& perturbed_upper, const Vector& perturbed_rhs) {
  const std::size_t n = lp.lp.num_rows;
  const std::size_t d = lp.lp.num_cols;
  if (perturbed_lower.size() != d || perturbed_upper.size() != d ||
      perturbed_rhs.size() != n)
    throw DimensionMismatch("fold_bounds vector lengths disagree");
  for (std::size_t j = 0; j < d; ++j)
    if (!(perturbed_lower[j] < perturbed_upper[j])) throw CrossedBounds(j);

  FoldedLP folded;
  folded.n = n;
  folded.d = d;
  folded.a_bar = Matrix(n + 2 * d, d, 0.0);
  folded.b_bar.resize(n + 2 * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) folded.a_bar(i, j) = lp.lp.a(i, j);
    folded.b_bar[i] = perturbed_rhs[i];
  }
  for (std::size_t j = 0; j < d; ++j) {
    folded.a_bar(n + j, j) = 1.0;
    folded.b_bar[n + j] = perturbed_upper[j];
    folded.a_bar(n + d + j, j) = -1.0;
    folded.b_bar[n + d + j] = -perturbed_lower[j];
  }
  return folded;
}

}  // namespace shadowlp
