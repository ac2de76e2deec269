#include "vpc/mps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace vpc {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

std::string upper(std::string s) {
  for (char& c : s) c = (char)std::toupper((unsigned char)c);
  return s;
}

double parse_num(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad number '" + s + "'");
  }
}

enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, Done };

struct RowDef {
  char sense = 'N';
  std::string name;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

LinearProgram parse_mps(std::istream& in, const MpsOptions& opt) {
  LinearProgram lp;
  Section section = Section::None;
  bool maximize = false;
  bool in_integer = false;
  int lineno = 0;
  bool saw_endata = false;

  std::vector<RowDef> rows;
  std::map<std::string, int> row_index;     // constraint rows only
  std::map<std::string, int> col_index;
  std::string obj_name;
  bool have_obj = false;

  struct ColEntry { int col; double val; };
  std::vector<std::vector<ColEntry>> row_entries;
  std::vector<double> obj_coef;
  std::vector<bool> integer_flags;
  std::vector<double> col_lower, col_upper;
  std::vector<bool> lower_set, upper_set;
  std::vector<std::pair<std::string, double>> ranges;

  auto get_col = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    int id = (int)col_index.size();
    col_index.emplace(name, id);
    lp.col_names.push_back(name);
    obj_coef.push_back(0.0);
    integer_flags.push_back(in_integer);
    col_lower.push_back(0.0);
    col_upper.push_back(kInf);
    lower_set.push_back(false);
    upper_set.push_back(false);
    return id;
  };

  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw[0] == '*') continue;
    std::vector<std::string> toks = tokenize(raw);
    if (toks.empty()) continue;

    bool header = !std::isspace((unsigned char)raw[0]);
    if (header) {
      std::string key = upper(toks[0]);
      if (key == "NAME") {
        if (toks.size() > 1) lp.name = toks[1];
        section = Section::Name;
        continue;
      }
      if (key == "OBJSENSE") {
        if (toks.size() > 1) maximize = upper(toks[1]).substr(0, 3) == "MAX";
        section = Section::ObjSense;
        continue;
      }
      if (key == "ROWS") { section = Section::Rows; continue; }
      if (key == "COLUMNS") { section = Section::Columns; continue; }
      if (key == "RHS") { section = Section::Rhs; continue; }
      if (key == "RANGES") { section = Section::Ranges; continue; }
      if (key == "BOUNDS") { section = Section::Bounds; continue; }
      if (key == "ENDATA") { saw_endata = true; section = Section::Done; break; }
      if (key == "SOS" || key == "INDICATORS" || key == "QUADOBJ" ||
          key == "QMATRIX" || key == "QCMATRIX")
        throw UnsupportedFeature("section " + key + " is not supported");
      throw ParseError(lineno, "unknown section '" + toks[0] + "'");
    }

    switch (section) {
      case Section::ObjSense: {
        maximize = upper(toks[0]).substr(0, 3) == "MAX";
        break;
      }
      case Section::Rows: {
        if (toks.size() != 2) throw ParseError(lineno, "expected sense and row name");
        char sense = (char)std::toupper((unsigned char)toks[0][0]);
        if (toks[0].size() != 1 || std::string("NLGE").find(sense) == std::string::npos)
          throw ParseError(lineno, "bad row sense '" + toks[0] + "'");
        if (sense == 'N') {
          if (!have_obj) {
            obj_name = toks[1];
            have_obj = true;
          }
          break;  // extra free rows are dropped
        }
        if (row_index.count(toks[1]))
          throw ParseError(lineno, "duplicate row '" + toks[1] + "'");
        row_index.emplace(toks[1], (int)rows.size());
        rows.push_back({sense, toks[1]});
        row_entries.emplace_back();
        break;
      }
      case Section::Columns: {
        if (toks.size() >= 3 && upper(toks[1]) == "'MARKER'") {
          std::string mark = upper(toks[2]);
          if (mark == "'INTORG'") in_integer = true;
          else if (mark == "'INTEND'") in_integer = false;
          else throw ParseError(lineno, "unknown marker " + toks[2]);
          break;
        }
        if (toks.size() < 3 || toks.size() % 2 == 0)
          throw ParseError(lineno, "expected column, then row/value pairs");
        int col = get_col(toks[0]);
        for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
          double v = parse_num(toks[k + 1], lineno);
          if (have_obj && toks[k] == obj_name) {
            obj_coef[col] += v;
            continue;
          }
          auto it = row_index.find(toks[k]);
          if (it == row_index.end())
            throw ParseError(lineno, "unknown row '" + toks[k] + "'");
          row_entries[it->second].push_back({col, v});
        }
        break;
      }
      case Section::Rhs: {
        std::size_t first = toks.size() % 2 == 0 ? 0 : 1;
        if (toks.size() < 2) throw ParseError(lineno, "short RHS line");
        for (std::size_t k = first; k + 1 < toks.size(); k += 2) {
          double v = parse_num(toks[k + 1], lineno);
          if (have_obj && toks[k] == obj_name) continue;  // objective offset unused
          auto it = row_index.find(toks[k]);
          if (it == row_index.end())
            throw ParseError(lineno, "unknown row '" + toks[k] + "'");
          lp.rhs.resize(rows.size(), 0.0);
          lp.rhs[it->second] = v;
        }
        break;
      }
      case Section::Ranges: {
        std::size_t first = toks.size() % 2 == 0 ? 0 : 1;
        if (toks.size() < 2) throw ParseError(lineno, "short RANGES line");
        for (std::size_t k = first; k + 1 < toks.size(); k += 2) {
          if (!row_index.count(toks[k]))
            throw ParseError(lineno, "unknown row '" + toks[k] + "'");
          ranges.emplace_back(toks[k], parse_num(toks[k + 1], lineno));
        }
        break;
      }
      case Section::Bounds: {
        std::string type = upper(toks[0]);
        bool needs_value = type == "LO" || type == "UP" || type == "FX" ||
                           type == "UI" || type == "LI";
        bool no_value = type == "FR" || type == "MI" || type == "PL" || type == "BV";
        if (!needs_value && !no_value)
          throw ParseError(lineno, "bad bound type '" + toks[0] + "'");
        std::size_t want = needs_value ? 3 : 2;
        std::size_t col_at;
        if (toks.size() == want + 1) col_at = 2;        // with bound-set name
        else if (toks.size() == want) col_at = 1;       // without
        else throw ParseError(lineno, "malformed bound line");
        const std::string& cname = toks[col_at];
        if (!col_index.count(cname))
          throw ParseError(lineno, "unknown column '" + cname + "'");
        int col = col_index[cname];
        double v = needs_value ? parse_num(toks[col_at + 1], lineno) : 0.0;
        if (type == "LO") { col_lower[col] = v; lower_set[col] = true; }
        else if (type == "UP") {
          col_upper[col] = v;
          upper_set[col] = true;
          if (v < 0.0 && !lower_set[col]) col_lower[col] = -kInf;
        } else if (type == "FX") {
          col_lower[col] = col_upper[col] = v;
          lower_set[col] = upper_set[col] = true;
        } else if (type == "FR") {
          col_lower[col] = -kInf;
          col_upper[col] = kInf;
          lower_set[col] = upper_set[col] = true;
        } else if (type == "MI") { col_lower[col] = -kInf; lower_set[col] = true; }
        else if (type == "PL") { col_upper[col] = kInf; upper_set[col] = true; }
        else if (type == "BV") {
          col_lower[col] = 0.0;
          col_upper[col] = 1.0;
          integer_flags[col] = true;
          lower_set[col] = upper_set[col] = true;
        } else if (type == "UI") {
          col_upper[col] = v;
          integer_flags[col] = true;
          upper_set[col] = true;
        } else if (type == "LI") {
          col_lower[col] = v;
          integer_flags[col] = true;
          lower_set[col] = true;
        }
        break;
      }
      case Section::Name:
      case Section::None:
      case Section::Done:
        throw ParseError(lineno, "data outside of a section");
    }
  }
  if (!saw_endata) throw ParseError(lineno, "missing ENDATA");
  if (!have_obj) throw ParseError(lineno, "no objective row");

  if (opt.integer_default_unit_bounds)
    for (std::size_t j = 0; j < integer_flags.size(); ++j)
      if (integer_flags[j] && !upper_set[j]) col_upper[j] = 1.0;

  lp.n_cols = (int)col_index.size();
  lp.objective = std::move(obj_coef);
  lp.col_lower = std::move(col_lower);
  lp.col_upper = std::move(col_upper);
  lp.integer_flags = std::move(integer_flags);
  lp.rhs.resize(rows.size(), 0.0);
  if (maximize) {
    lp.objective_negated = true;
    for (double& c : lp.objective) c = -c;
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<ColEntry>& es = row_entries[i];
    std::sort(es.begin(), es.end(),
              [](const ColEntry& a, const ColEntry& b) { return a.col < b.col; });
    SparseRow r;
    for (std::size_t k = 0; k < es.size(); ++k) {
      if (k + 1 < es.size() && es[k + 1].col == es[k].col) {
        es[k + 1].val += es[k].val;  // repeated entries accumulate
        continue;
      }
      if (es[k].val != 0.0) r.push(es[k].col, es[k].val);
    }
    lp.rows.push_back(std::move(r));
    lp.row_names.push_back(rows[i].name);
    switch (rows[i].sense) {
      case 'L': lp.senses.push_back(RowSense::LE); break;
      case 'G': lp.senses.push_back(RowSense::GE); break;
      default: lp.senses.push_back(RowSense::EQ); break;
    }
  }
  lp.n_rows = (int)lp.rows.size();

  // RANGES make a row two-sided; emit the implied opposite-sense twin row.
  for (const auto& [name, r] : ranges) {
    int i = row_index[name];
    double b = lp.rhs[i];
    SparseRow copy = lp.rows[i];
    switch (lp.senses[i]) {
      case RowSense::LE:
        lp.rows.push_back(copy);
        lp.senses.push_back(RowSense::GE);
        lp.rhs.push_back(b - std::abs(r));
        lp.row_names.push_back(name + "_rng");
        break;
      case RowSense::GE:
        lp.rows.push_back(copy);
        lp.senses.push_back(RowSense::LE);
        lp.rhs.push_back(b + std::abs(r));
        lp.row_names.push_back(name + "_rng");
        break;
      case RowSense::EQ:
        if (r == 0.0) break;
        lp.senses[i] = r > 0.0 ? RowSense::GE : RowSense::LE;
        lp.rows.push_back(copy);
        lp.senses.push_back(r > 0.0 ? RowSense::LE : RowSense::GE);
        lp.rhs.push_back(b + r);
        lp.row_names.push_back(name + "_rng");
        break;
    }
  }
  lp.n_rows = (int)lp.rows.size();

  lp.validate();
  return lp;
}

LinearProgram parse_mps_file(const std::string& path, const MpsOptions& opt) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  LinearProgram lp = parse_mps(in, opt);
  if (lp.name.empty()) {
    std::size_t slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    lp.name = dot == std::string::npos ? base : base.substr(0, dot);
  }
  return lp;
}

void write_mps(const LinearProgram& lp, std::ostream& out) {
  auto row_name = [&](int i) {
    return i < (int)lp.row_names.size() && !lp.row_names[i].empty()
               ? lp.row_names[i]
               : "r" + std::to_string(i);
  };
  auto col_name = [&](int j) {
    return j < (int)lp.col_names.size() && !lp.col_names[j].empty()
               ? lp.col_names[j]
               : "c" + std::to_string(j);
  };

  out << "NAME " << (lp.name.empty() ? "lp" : lp.name) << "\n";
  if (lp.objective_negated) out << "OBJSENSE\n MAX\n";
  out << "ROWS\n N obj\n";
  for (int i = 0; i < lp.n_rows; ++i) {
    char s = lp.senses[i] == RowSense::LE ? 'L'
             : lp.senses[i] == RowSense::GE ? 'G' : 'E';
    out << ' ' << s << ' ' << row_name(i) << "\n";
  }

  // Column-major entries.
  std::vector<std::vector<std::pair<int, double>>> by_col(lp.n_cols);
  for (int i = 0; i < lp.n_rows; ++i)
    for (std::size_t k = 0; k < lp.rows[i].cols.size(); ++k)
      by_col[lp.rows[i].cols[k]].emplace_back(i, lp.rows[i].vals[k]);

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  double sense_flip = lp.objective_negated ? -1.0 : 1.0;
  for (int j = 0; j < lp.n_cols; ++j) {
    if (lp.integer_flags[j] != in_int) {
      in_int = lp.integer_flags[j];
      out << " M" << marker++ << " 'MARKER' " << (in_int ? "'INTORG'" : "'INTEND'")
          << "\n";
    }
    if (lp.objective[j] != 0.0)
      out << ' ' << col_name(j) << " obj " << fmt(sense_flip * lp.objective[j])
          << "\n";
    for (const auto& [i, v] : by_col[j])
      out << ' ' << col_name(j) << ' ' << row_name(i) << ' ' << fmt(v) << "\n";
    if (lp.objective[j] == 0.0 && by_col[j].empty())
      out << ' ' << col_name(j) << " obj 0\n";  // keep empty columns alive
  }
  if (in_int) out << " M" << marker++ << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  for (int i = 0; i < lp.n_rows; ++i)
    if (lp.rhs[i] != 0.0) out << " rhs " << row_name(i) << ' ' << fmt(lp.rhs[i]) << "\n";

  out << "BOUNDS\n";
  for (int j = 0; j < lp.n_cols; ++j) {
    double lo = lp.col_lower[j], hi = lp.col_upper[j];
    if (lo == hi) {
      out << " FX bnd " << col_name(j) << ' ' << fmt(lo) << "\n";
      continue;
    }
    if (std::isinf(lo) && std::isinf(hi)) {
      out << " FR bnd " << col_name(j) << "\n";
      continue;
    }
    if (std::isinf(lo)) out << " MI bnd " << col_name(j) << "\n";
    else if (lo != 0.0) out << " LO bnd " << col_name(j) << ' ' << fmt(lo) << "\n";
    if (!std::isinf(hi)) out << " UP bnd " << col_name(j) << ' ' << fmt(hi) << "\n";
  }
  out << "ENDATA\n";
}

std::string write_mps_string(const LinearProgram& lp) {
  std::ostringstream out;
  write_mps(lp, out);
  return out.str();
}

}  // namespace vpc
