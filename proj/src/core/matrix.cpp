#include "matrix.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"
#include "theory.hpp"

namespace mgs {

std::string wiring_name(WiringPolicy p) {
  return p == WiringPolicy::SameIndex ? "SameIndex" : "Cascade";
}

WiringPolicy wiring_from_name(const std::string &name) {
  if (name == "SameIndex")
    return WiringPolicy::SameIndex;
  if (name == "Cascade")
    return WiringPolicy::Cascade;
  throw ConfigError("unknown wiring policy '" + name +
                    "' (expected SameIndex or Cascade)");
}

std::size_t MatrixStructure::valid_count() const {
  std::size_t n = 0;
  for (const auto &row : valid)
    for (bool v : row)
      n += v;
  return n;
}

std::vector<std::pair<std::size_t, std::size_t>>
MatrixStructure::valid_cells() const {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (valid[i][j])
        cells.emplace_back(i, j);
  return cells;
}

int MatrixStructure::row_of(const Sort &sort, int ordinal) const {
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].sort == sort && rows[i].ordinal == ordinal)
      return static_cast<int>(i);
  return -1;
}

MatrixInstance MatrixInstance::zeros(const MatrixStructure &s) {
  MatrixInstance m;
  m.bits.assign(s.rows.size(),
                std::vector<unsigned char>(s.cols.size(), 0));
  return m;
}

std::size_t MatrixInstance::count_ones() const {
  std::size_t n = 0;
  for (const auto &row : bits)
    for (unsigned char b : row)
      n += b;
  return n;
}

std::string MatrixInstance::key() const {
  std::string k;
  for (const auto &row : bits)
    for (unsigned char b : row)
      k.push_back(b ? '1' : '0');
  return k;
}

std::string value_label(const Value &v) {
  switch (v.sort.kind) {
  case Sort::Kind::Bool:
    return v.b ? "true" : "false";
  case Sort::Kind::Int:
    return v.i.str();
  case Sort::Kind::BitVec:
  default:
    return v.str();
  }
}

namespace {

std::string sort_tag(const Sort &s) {
  switch (s.kind) {
  case Sort::Kind::Bool:
    return "Bool";
  case Sort::Kind::Int:
    return "Int";
  case Sort::Kind::BitVec:
  default:
    return "BV" + std::to_string(s.width);
  }
}

void collect_literals(const TermPtr &t, std::vector<Value> &out) {
  if (t->kind() == Term::Kind::Constant) {
    const Value &v = t->value();
    for (const auto &seen : out)
      if (seen == v)
        return;
    out.push_back(v);
    return;
  }
  if (t->kind() == Term::Kind::Apply)
    for (const auto &a : t->args())
      collect_literals(a, out);
}

Value basic_zero(const Sort &s) {
  return s.kind == Sort::Kind::Int ? Value::integer_of(0)
                                   : Value::bitvec_of(s.width, 0);
}

Value basic_one(const Sort &s) {
  return s.kind == Sort::Kind::Int ? Value::integer_of(1)
                                   : Value::bitvec_of(s.width, 1);
}

} // namespace

MatrixStructure build_structure(const Benchmark &b, WiringPolicy wiring) {
  const auto &ops = theory_ops(b.logic); // throws on unsupported logic

  // Sorts occurring in the signature, return sort first; Bool is always
  // present because both operator tables include predicates.
  std::vector<Sort> occurring{b.synth_fun.ret};
  auto add_sort = [&occurring](const Sort &s) {
    for (const auto &seen : occurring)
      if (seen == s)
        return;
    occurring.push_back(s);
  };
  for (const auto &[n, s] : b.synth_fun.params)
    add_sort(s);
  add_sort(Sort::boolean());

  MatrixStructure st;
  st.policy = wiring;
  for (const auto &s : occurring)
    for (int ordinal = 1; ordinal <= 2; ++ordinal) {
      NonTerminal nt;
      nt.sort = s;
      nt.ordinal = ordinal;
      nt.name = st.rows.empty() ? "Start"
                                : "N_" + sort_tag(s) + "_" +
                                      std::to_string(ordinal);
      st.rows.push_back(std::move(nt));
    }

  std::vector<Sort> value_sorts;
  for (const auto &s : occurring)
    if (s.kind != Sort::Kind::Bool)
      value_sorts.push_back(s);

  // Operator columns: theory ops touching a value sort are instantiated once
  // per occurring value sort; pure-Bool connectives appear once. Labels are
  // qualified by sort only when one operator lands at several sorts.
  std::vector<Sort> col_principal;
  auto add_op_column = [&st, &col_principal](const TheoryOp &op,
                                             const Sort &value_sort) {
    ProductionRule col;
    col.shape = ProductionRule::Shape::Operator;
    col.op = op.name;
    col.label = op.name;
    col.result_sort = op.result_is_value ? value_sort : Sort::boolean();
    for (bool v : op.operand_is_value)
      col.operand_sorts.push_back(v ? value_sort : Sort::boolean());
    st.cols.push_back(std::move(col));
    col_principal.push_back(value_sort);
  };
  for (const auto &op : ops) {
    bool touches_value =
        op.result_is_value ||
        std::find(op.operand_is_value.begin(), op.operand_is_value.end(),
                  true) != op.operand_is_value.end();
    if (touches_value) {
      for (const auto &vs : value_sorts)
        add_op_column(op, vs);
    } else {
      add_op_column(op, Sort::boolean());
      col_principal.back() = Sort::boolean();
    }
  }
  {
    std::map<std::string, int> uses;
    for (const auto &c : st.cols)
      ++uses[c.op];
    for (std::size_t j = 0; j < st.cols.size(); ++j)
      if (uses[st.cols[j].op] > 1)
        st.cols[j].label = st.cols[j].op + ":" + sort_tag(col_principal[j]);
  }

  // Terminal columns: arguments, then 0/1 per value sort and true/false,
  // then spec literals in first-appearance order, then helpers.
  for (const auto &[name, sort] : b.synth_fun.params) {
    ProductionRule col;
    col.label = name;
    col.result_sort = sort;
    col.terminal = Term::variable(name, sort);
    st.cols.push_back(std::move(col));
  }
  std::vector<Value> basics;
  for (const auto &vs : value_sorts) {
    basics.push_back(basic_zero(vs));
    basics.push_back(basic_one(vs));
  }
  basics.push_back(Value::boolean_of(true));
  basics.push_back(Value::boolean_of(false));
  for (const auto &v : basics) {
    ProductionRule col;
    col.label = value_label(v);
    col.result_sort = v.sort;
    col.terminal = Term::constant(v);
    st.cols.push_back(std::move(col));
  }
  std::vector<Value> literals;
  for (const auto &c : b.constraints)
    collect_literals(c, literals);
  for (const auto &v : literals) {
    if (std::find(basics.begin(), basics.end(), v) != basics.end())
      continue;
    ProductionRule col;
    col.label = value_label(v);
    col.result_sort = v.sort;
    col.terminal = Term::constant(v);
    col.aux = true;
    st.cols.push_back(std::move(col));
  }
  for (const auto &h : b.helpers) {
    bool wireable = true;
    for (const auto &[pn, ps] : h.params)
      if (std::find(occurring.begin(), occurring.end(), ps) ==
          occurring.end())
        wireable = false;
    if (!wireable)
      continue; // operand sort has no row; the column could never fire
    ProductionRule col;
    col.label = h.name;
    col.result_sort = h.ret;
    col.aux = true;
    if (h.params.empty()) {
      col.terminal = Term::apply(h.name, {});
    } else {
      col.shape = ProductionRule::Shape::Operator;
      col.op = h.name;
      for (const auto &[pn, ps] : h.params)
        col.operand_sorts.push_back(ps);
    }
    st.cols.push_back(std::move(col));
  }

  st.valid.assign(st.rows.size(), std::vector<bool>(st.cols.size(), false));
  for (std::size_t i = 0; i < st.rows.size(); ++i)
    for (std::size_t j = 0; j < st.cols.size(); ++j)
      st.valid[i][j] = st.rows[i].sort == st.cols[j].result_sort;
  return st;
}

MatrixInstance full_instance(const MatrixStructure &s) {
  MatrixInstance m = MatrixInstance::zeros(s);
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (std::size_t j = 0; j < s.cols.size(); ++j)
      m.bits[i][j] = s.valid[i][j] ? 1 : 0;
  return m;
}

MatrixInstance random_instance(const MatrixStructure &s, Rng &rng,
                               double density) {
  MatrixInstance m = MatrixInstance::zeros(s);
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (std::size_t j = 0; j < s.cols.size(); ++j)
      if (s.valid[i][j] && rng.bernoulli(density))
        m.bits[i][j] = 1;
  return m;
}

Grammar instantiate(const MatrixStructure &s, const MatrixInstance &m) {
  assert(m.bits.size() == s.rows.size());
  Grammar g;
  for (const auto &r : s.rows)
    g.nonterminals.push_back({r.name, r.sort});
  g.rules.resize(s.rows.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    for (std::size_t j = 0; j < s.cols.size(); ++j) {
      if (!m.bits[i][j])
        continue;
      assert(s.valid[i][j]);
      const ProductionRule &col = s.cols[j];
      if (col.shape == ProductionRule::Shape::Terminal) {
        g.rules[i].push_back(col.terminal);
        continue;
      }
      std::vector<TermPtr> args;
      for (const auto &os : col.operand_sorts) {
        int target = s.policy == WiringPolicy::SameIndex
                         ? s.row_of(os, s.rows[i].ordinal)
                         : s.row_of(os, 2);
        assert(target >= 0);
        const NonTerminal &nt = s.rows[static_cast<std::size_t>(target)];
        args.push_back(Term::variable(nt.name, nt.sort));
      }
      g.rules[i].push_back(Term::apply(col.op, std::move(args)));
    }
  }
  return g;
}

std::string serialize_matrix(const MatrixStructure &s,
                             const MatrixInstance &m) {
  std::ostringstream out;
  out << "rows=" << s.rows.size() << " cols=" << s.cols.size()
      << " policy=" << wiring_name(s.policy) << "\n";
  for (std::size_t j = 0; j < s.cols.size(); ++j)
    out << (j ? " " : "") << s.cols[j].label;
  out << "\n";
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    out << (i ? " " : "") << s.rows[i].name;
  out << "\n";
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    for (std::size_t j = 0; j < s.cols.size(); ++j) {
      if (j)
        out << ' ';
      out << (!s.valid[i][j] ? 'x' : m.bits[i][j] ? '1' : '0');
    }
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<std::string> split_ws(const std::string &line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok)
    out.push_back(tok);
  return out;
}

} // namespace

MatrixFile deserialize_matrix(const std::string &text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header))
    throw ParseError("empty matrix file", 1, 1);
  std::size_t n_rows = 0, n_cols = 0;
  std::string policy_name;
  {
    auto toks = split_ws(header);
    if (toks.size() != 3 || toks[0].rfind("rows=", 0) != 0 ||
        toks[1].rfind("cols=", 0) != 0 || toks[2].rfind("policy=", 0) != 0)
      throw ParseError("malformed matrix header (expected "
                       "'rows=<r> cols=<c> policy=<p>')",
                       1, 1);
    try {
      n_rows = std::stoul(toks[0].substr(5));
      n_cols = std::stoul(toks[1].substr(5));
    } catch (const std::exception &) {
      throw ParseError("malformed matrix dimensions", 1, 1);
    }
    policy_name = toks[2].substr(7);
  }
  if (n_rows == 0 || n_cols == 0)
    throw ParseError("matrix must have at least one row and column", 1, 1);

  MatrixFile f;
  f.policy = wiring_from_name(policy_name);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("missing column label line", 2, 1);
  f.col_labels = split_ws(line);
  if (f.col_labels.size() != n_cols)
    throw ParseError("expected " + std::to_string(n_cols) +
                         " column labels, found " +
                         std::to_string(f.col_labels.size()),
                     2, 1);
  if (!std::getline(in, line))
    throw ParseError("missing row label line", 3, 1);
  f.row_labels = split_ws(line);
  if (f.row_labels.size() != n_rows)
    throw ParseError("expected " + std::to_string(n_rows) +
                         " row labels, found " +
                         std::to_string(f.row_labels.size()),
                     3, 1);

  f.valid.assign(n_rows, std::vector<bool>(n_cols, false));
  f.instance.bits.assign(n_rows, std::vector<unsigned char>(n_cols, 0));
  for (std::size_t i = 0; i < n_rows; ++i) {
    int line_no = static_cast<int>(i) + 4;
    if (!std::getline(in, line))
      throw ParseError("missing matrix row " + std::to_string(i + 1), line_no,
                       1);
    auto cells = split_ws(line);
    if (cells.size() != n_cols)
      throw ParseError("row " + std::to_string(i + 1) + " has " +
                           std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(n_cols),
                       line_no, 1);
    for (std::size_t j = 0; j < n_cols; ++j) {
      const std::string &c = cells[j];
      if (c == "x")
        continue;
      if (c == "0" || c == "1") {
        f.valid[i][j] = true;
        f.instance.bits[i][j] = c == "1" ? 1 : 0;
        continue;
      }
      throw ParseError("invalid cell '" + c + "' at row " +
                           std::to_string(i + 1) + ", column " +
                           std::to_string(j + 1) + " (expected 0, 1 or x)",
                       line_no, 1);
    }
  }
  while (std::getline(in, line))
    if (!split_ws(line).empty())
      throw ParseError("trailing content after matrix grid",
                       static_cast<int>(n_rows) + 4, 1);
  return f;
}

} // namespace mgs
