#include "category.hpp"

#include <ostream>
#include <set>

#include "errors.hpp"

namespace mgs {

std::string sort_role(const Sort &s, bool erase_bv) {
  switch (s.kind) {
  case Sort::Kind::Bool:
    return "Bool";
  case Sort::Kind::Int:
    return "Int";
  case Sort::Kind::BitVec:
  default:
    return erase_bv ? "BV" : "BV" + std::to_string(s.width);
  }
}

std::string row_role(const NonTerminal &row, bool erase_bv) {
  return "N_" + sort_role(row.sort, erase_bv) + "_" +
         std::to_string(row.ordinal);
}

std::string column_role(const Benchmark &b, const ProductionRule &col,
                        bool erase_bv) {
  if (col.aux)
    return "";
  if (col.shape == ProductionRule::Shape::Operator) {
    // Key by the value sort the operator is instantiated at; pure-Bool
    // connectives key at Bool.
    Sort inst = Sort::boolean();
    if (col.result_sort.kind != Sort::Kind::Bool) {
      inst = col.result_sort;
    } else {
      for (const auto &os : col.operand_sorts)
        if (os.kind != Sort::Kind::Bool) {
          inst = os;
          break;
        }
    }
    return col.op + ":" + sort_role(inst, erase_bv);
  }
  if (col.terminal->kind() == Term::Kind::Variable) {
    const auto &params = b.synth_fun.params;
    for (std::size_t k = 0; k < params.size(); ++k)
      if (params[k].first == col.terminal->name())
        return "arg" + std::to_string(k) + ":" +
               sort_role(params[k].second, erase_bv);
    return "";
  }
  const Value &v = col.terminal->value();
  if (v.sort.kind == Sort::Kind::Bool)
    return v.b ? "true:Bool" : "false:Bool";
  bool is_zero = v.sort.kind == Sort::Kind::Int ? v.i == 0 : v.bits == 0;
  return (is_zero ? "c0:" : "c1:") + sort_role(v.sort, erase_bv);
}

CategoryModel
CategoryModel::build(const std::vector<const Benchmark *> &benches,
                     WiringPolicy policy) {
  if (benches.empty())
    throw ConfigError("cannot build a category model from zero benchmarks");
  CategoryModel m;
  m.policy = policy;
  if (benches.size() == 1) {
    m.shared = false;
    m.genome = build_structure(*benches.front(), policy);
    return m;
  }
  m.shared = true;
  for (const Benchmark *b : benches) {
    std::set<int> widths;
    if (b->synth_fun.ret.kind == Sort::Kind::BitVec)
      widths.insert(b->synth_fun.ret.width);
    for (const auto &[n, s] : b->synth_fun.params)
      if (s.kind == Sort::Kind::BitVec)
        widths.insert(s.width);
    if (widths.size() > 1)
      m.erase_bv_width = false;
  }

  MatrixStructure g;
  g.policy = policy;
  std::vector<std::string> col_result_roles;
  for (const Benchmark *b : benches) {
    MatrixStructure s = build_structure(*b, policy);
    for (const auto &row : s.rows) {
      std::string role = row_role(row, m.erase_bv_width);
      if (m.row_index.count(role))
        continue;
      m.row_index.emplace(role, g.rows.size());
      NonTerminal nt = row;
      nt.name = role;
      g.rows.push_back(std::move(nt));
    }
    for (const auto &col : s.cols) {
      std::string role = column_role(*b, col, m.erase_bv_width);
      if (role.empty() || m.col_index.count(role))
        continue;
      m.col_index.emplace(role, g.cols.size());
      ProductionRule c = col;
      c.label = role;
      g.cols.push_back(std::move(c));
      col_result_roles.push_back(
          sort_role(col.result_sort, m.erase_bv_width));
    }
  }
  g.valid.assign(g.rows.size(), std::vector<bool>(g.cols.size(), false));
  for (std::size_t i = 0; i < g.rows.size(); ++i)
    for (std::size_t j = 0; j < g.cols.size(); ++j)
      g.valid[i][j] =
          sort_role(g.rows[i].sort, m.erase_bv_width) == col_result_roles[j];
  m.genome = std::move(g);
  return m;
}

namespace {

// Column sources for a projection: a genome column index, or always-on.
constexpr int kAlwaysOn = -1;

std::function<MatrixInstance(const MatrixInstance &)>
make_projection(MatrixStructure s, std::vector<std::size_t> row_map,
                std::vector<int> col_map) {
  return [s = std::move(s), row_map = std::move(row_map),
          col_map = std::move(col_map)](const MatrixInstance &genome) {
    MatrixInstance m = MatrixInstance::zeros(s);
    for (std::size_t i = 0; i < s.rows.size(); ++i)
      for (std::size_t j = 0; j < s.cols.size(); ++j) {
        if (!s.valid[i][j])
          continue;
        m.bits[i][j] = col_map[j] == kAlwaysOn
                           ? 1
                           : genome.bits[row_map[i]]
                                        [static_cast<std::size_t>(col_map[j])];
      }
    return m;
  };
}

} // namespace

EvalTarget CategoryModel::target_for(const Benchmark &b,
                                     std::ostream *warnings) const {
  EvalTarget t;
  t.bench = &b;
  t.structure = build_structure(b, policy);
  if (!shared) {
    t.project = [](const MatrixInstance &m) { return m; };
    return t;
  }
  std::vector<std::size_t> row_map(t.structure.rows.size());
  for (std::size_t i = 0; i < t.structure.rows.size(); ++i) {
    std::string role = row_role(t.structure.rows[i], erase_bv_width);
    auto it = row_index.find(role);
    if (it == row_index.end())
      throw ConfigError("benchmark '" + b.source_id + "' needs row " + role +
                        " which the category genome lacks");
    row_map[i] = it->second;
  }
  std::vector<int> col_map(t.structure.cols.size());
  for (std::size_t j = 0; j < t.structure.cols.size(); ++j) {
    const auto &col = t.structure.cols[j];
    if (col.aux) {
      col_map[j] = kAlwaysOn;
      continue;
    }
    std::string role = column_role(b, col, erase_bv_width);
    auto it = col_index.find(role);
    if (it != col_index.end()) {
      col_map[j] = static_cast<int>(it->second);
      continue;
    }
    if (role.rfind("arg", 0) == 0) {
      col_map[j] = kAlwaysOn;
      if (warnings)
        *warnings << "warning: benchmark '" << b.source_id << "' argument '"
                  << col.label << "' (" << role
                  << ") has no genome column; treating it as always-on\n";
      continue;
    }
    throw ConfigError("benchmark '" + b.source_id + "' column '" + col.label +
                      "' (" + role + ") has no match in the category genome");
  }
  t.project =
      make_projection(t.structure, std::move(row_map), std::move(col_map));
  return t;
}

std::vector<EvalTarget>
CategoryModel::targets_for(const std::vector<const Benchmark *> &benches,
                           std::ostream *warnings) const {
  std::vector<EvalTarget> targets;
  for (const Benchmark *b : benches)
    targets.push_back(target_for(*b, warnings));
  return targets;
}

MatrixInstance project_matrix_file(const MatrixFile &f, const Benchmark &b,
                                   const MatrixStructure &s,
                                   std::ostream *warnings) {
  std::map<std::string, std::size_t> frow, fcol;
  for (std::size_t i = 0; i < f.row_labels.size(); ++i)
    frow.emplace(f.row_labels[i], i);
  for (std::size_t j = 0; j < f.col_labels.size(); ++j)
    fcol.emplace(f.col_labels[j], j);

  auto find_row = [&](const NonTerminal &row) -> std::size_t {
    for (const std::string &key :
         {row.name, row_role(row, true), row_role(row, false)}) {
      auto it = frow.find(key);
      if (it != frow.end())
        return it->second;
    }
    throw ConfigError("benchmark '" + b.source_id + "' row '" + row.name +
                      "' has no match in the matrix file");
  };
  auto find_col = [&](const ProductionRule &col) -> int {
    std::vector<std::string> keys{col.label};
    if (!col.aux) {
      keys.push_back(column_role(b, col, true));
      keys.push_back(column_role(b, col, false));
    }
    for (const std::string &key : keys) {
      auto it = fcol.find(key);
      if (it != fcol.end())
        return static_cast<int>(it->second);
    }
    if (col.aux)
      return -1;
    if (!col.terminal || col.terminal->kind() != Term::Kind::Variable)
      throw ConfigError("benchmark '" + b.source_id + "' column '" +
                        col.label + "' has no match in the matrix file");
    if (warnings)
      *warnings << "warning: benchmark '" << b.source_id << "' argument '"
                << col.label
                << "' has no matrix file column; treating it as always-on\n";
    return -1;
  };

  std::vector<std::size_t> row_map(s.rows.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    row_map[i] = find_row(s.rows[i]);
  MatrixInstance m = MatrixInstance::zeros(s);
  for (std::size_t j = 0; j < s.cols.size(); ++j) {
    int fj = find_col(s.cols[j]);
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
      if (!s.valid[i][j])
        continue;
      if (fj < 0) {
        m.bits[i][j] = 1;
        continue;
      }
      std::size_t fi = row_map[i];
      std::size_t fjj = static_cast<std::size_t>(fj);
      m.bits[i][j] = f.valid[fi][fjj] ? f.instance.bits[fi][fjj] : 0;
    }
  }
  return m;
}

} // namespace mgs
