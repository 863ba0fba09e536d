#include "term.hpp"

#include <limits>
#include <sstream>

namespace mgs {

std::string Sort::str() const {
  switch (kind) {
  case Kind::Bool:
    return "Bool";
  case Kind::Int:
    return "Int";
  case Kind::BitVec:
    return "(_ BitVec " + std::to_string(width) + ")";
  }
  return "?";
}

Value Value::boolean_of(bool v) {
  Value r;
  r.sort = Sort::boolean();
  r.b = v;
  return r;
}

Value Value::integer_of(Integer v) {
  Value r;
  r.sort = Sort::integer();
  r.i = std::move(v);
  return r;
}

Value Value::bitvec_of(unsigned width, std::uint64_t pattern) {
  Value r;
  r.sort = Sort::bitvec(width);
  r.bits = width >= 64 ? pattern : (pattern & ((1ULL << width) - 1));
  return r;
}

bool Value::operator==(const Value &o) const {
  if (sort != o.sort)
    return false;
  switch (sort.kind) {
  case Sort::Kind::Bool:
    return b == o.b;
  case Sort::Kind::Int:
    return i == o.i;
  case Sort::Kind::BitVec:
    return bits == o.bits;
  }
  return false;
}

std::string Value::str() const {
  switch (sort.kind) {
  case Sort::Kind::Bool:
    return b ? "true" : "false";
  case Sort::Kind::Int: {
    if (i < 0)
      return "(- " + Integer(-i).str() + ")";
    return i.str();
  }
  case Sort::Kind::BitVec: {
    std::string s = "#b";
    for (unsigned k = sort.width; k-- > 0;)
      s += ((bits >> k) & 1) ? '1' : '0';
    return s;
  }
  }
  return "?";
}

void Value::encode(std::string &out) const {
  switch (sort.kind) {
  case Sort::Kind::Bool:
    out += b ? '\1' : '\0';
    return;
  case Sort::Kind::Int: {
    // Tag byte keeps the int64 fast path disjoint from the decimal fallback.
    static const Integer lo = std::numeric_limits<std::int64_t>::min();
    static const Integer hi = std::numeric_limits<std::int64_t>::max();
    if (i >= lo && i <= hi) {
      out += '\0';
      auto u = static_cast<std::uint64_t>(i.convert_to<std::int64_t>());
      for (int k = 0; k < 8; ++k)
        out += static_cast<char>((u >> (8 * k)) & 0xff);
    } else {
      out += '\1';
      out += i.str();
      out += '\0';
    }
    return;
  }
  case Sort::Kind::BitVec:
    for (int k = 0; k < 8; ++k)
      out += static_cast<char>((bits >> (8 * k)) & 0xff);
    return;
  }
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t value_hash(const Value &v) {
  std::uint64_t h = static_cast<std::uint64_t>(v.sort.kind) * 31 + v.sort.width;
  switch (v.sort.kind) {
  case Sort::Kind::Bool:
    return mix(h, v.b ? 1 : 2);
  case Sort::Kind::Int: {
    std::uint64_t ih = 1469598103934665603ULL;
    for (char c : v.i.str()) {
      ih ^= static_cast<unsigned char>(c);
      ih *= 1099511628211ULL;
    }
    return mix(h, ih);
  }
  case Sort::Kind::BitVec:
    return mix(h, v.bits);
  }
  return h;
}

std::uint64_t str_hash(const std::string &s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

} // namespace

TermPtr Term::constant(Value v) {
  auto t = std::shared_ptr<Term>(new Term());
  t->kind_ = Kind::Constant;
  t->hash_ = mix(1, value_hash(v));
  t->value_ = std::move(v);
  t->size_ = 1;
  return t;
}

TermPtr Term::variable(std::string name, Sort sort) {
  auto t = std::shared_ptr<Term>(new Term());
  t->kind_ = Kind::Variable;
  t->hash_ = mix(2, mix(str_hash(name), static_cast<std::uint64_t>(sort.kind) * 131 + sort.width));
  t->name_ = std::move(name);
  t->var_sort_ = sort;
  t->size_ = 1;
  return t;
}

TermPtr Term::apply(std::string op, std::vector<TermPtr> args) {
  auto t = std::shared_ptr<Term>(new Term());
  t->kind_ = Kind::Apply;
  std::uint64_t h = mix(3, str_hash(op));
  std::size_t sz = 1;
  for (const auto &a : args) {
    h = mix(h, a->hash());
    sz += a->size();
  }
  t->hash_ = h;
  t->name_ = std::move(op);
  t->args_ = std::move(args);
  t->size_ = sz;
  return t;
}

bool Term::equals(const Term &o) const {
  if (this == &o)
    return true;
  if (kind_ != o.kind_ || hash_ != o.hash_)
    return false;
  switch (kind_) {
  case Kind::Constant:
    return value_ == o.value_;
  case Kind::Variable:
    return name_ == o.name_ && var_sort_ == o.var_sort_;
  case Kind::Apply: {
    if (name_ != o.name_ || args_.size() != o.args_.size())
      return false;
    for (std::size_t k = 0; k < args_.size(); ++k)
      if (!args_[k]->equals(*o.args_[k]))
        return false;
    return true;
  }
  }
  return false;
}

std::string Term::str() const {
  switch (kind_) {
  case Kind::Constant:
    return value_.str();
  case Kind::Variable:
    return name_;
  case Kind::Apply: {
    if (args_.empty())
      return name_; // zero-arity helper reference prints as a bare symbol
    std::ostringstream os;
    os << '(' << name_;
    for (const auto &a : args_)
      os << ' ' << a->str();
    os << ')';
    return os.str();
  }
  }
  return "?";
}

bool term_eq(const TermPtr &a, const TermPtr &b) {
  if (a == b)
    return true;
  if (!a || !b)
    return false;
  return a->equals(*b);
}

} // namespace mgs
