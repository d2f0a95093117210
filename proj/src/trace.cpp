#include "sreq/trace.hpp"

#include <cctype>
#include <string_view>

#include "sreq/resolve.hpp"

namespace sreq {

namespace {

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t ei = i;
      std::size_t ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      std::string_view da(a.data() + i, ei - i);
      std::string_view db(b.data() + j, ej - j);
      while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
      while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;  // same up to leading zeros
}

struct Collector {
  const SpecificationDriver& driver;
  const Project& project;
  std::set<FeatureRef> out;

  void feature(const std::string& target_type, const std::string& name) {
    const ContractedClass* cls = project.find_class(target_type);
    if (!cls) return;
    if (cls->find_attribute(name) || cls->find_command(name) || cls->find_query(name)) out.insert({cls->name, name});
  }

  void expr(const ExprPtr& e) {
    if (!e) return;
    if (e->kind == Expr::Kind::Feature && e->operand && e->operand->kind == Expr::Kind::Name) {
      if (const Argument* a = driver.find_argument(e->operand->name)) feature(a->type, e->name);
    }
    expr(e->operand);
    for (const auto& a : e->args) expr(a);
    expr(e->lhs);
    expr(e->rhs);
  }

  void body(const std::vector<Statement>& stmts) {
    for (const auto& s : stmts) {
      expr(s.call);
      expr(s.value);
      for (const auto& b : s.branches) {
        expr(b.condition);
        body(b.body);
      }
      body(s.otherwise);
      for (const auto& c : s.assertions) expr(c.expr);
    }
  }
};

}  // namespace

bool DriverRef::operator<(const DriverRef& other) const {
  if (owner != other.owner) return natural_less(owner, other.owner);
  return natural_less(name, other.name);
}

std::set<FeatureRef> references(const SpecificationDriver& driver, const Project& project) {
  Collector c{driver, project, {}};
  for (const auto& clause : driver.precondition) c.expr(clause.expr);
  c.body(driver.body);
  for (const auto& clause : driver.postcondition) c.expr(clause.expr);
  return c.out;
}

TraceMatrix build_matrix(const Project& project) {
  TraceMatrix m;
  for (const auto& rc : project.requirement_classes) {
    for (const auto& d : flatten_requirements(project, rc)) {
      DriverRef ref{d.owner, d.name};
      if (m.down.count(ref)) continue;
      auto features = references(d, project);
      for (const auto& f : features) m.up[f].insert(ref);
      m.down.emplace(ref, std::move(features));
    }
  }
  return m;
}

FeatureRef parse_feature(const Project& project, const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) throw UnknownFeature("expected CLASS.feature, got '" + text + "'");
  FeatureRef ref{text.substr(0, dot), text.substr(dot + 1)};
  const ContractedClass* cls = project.find_class(ref.cls);
  if (!cls) throw UnknownFeature("unknown class '" + ref.cls + "'");
  if (!cls->find_attribute(ref.feature) && !cls->find_command(ref.feature) && !cls->find_query(ref.feature)) {
    throw UnknownFeature("feature '" + ref.feature + "', which is not a part of class " + ref.cls);
  }
  return ref;
}

std::vector<ImpactRow> impact(const Project& project, const std::string& feature,
                              const std::map<DriverRef, Status>& verdicts) {
  const FeatureRef ref = parse_feature(project, feature);
  const TraceMatrix m = build_matrix(project);
  std::vector<ImpactRow> rows;
  auto it = m.up.find(ref);
  if (it == m.up.end()) return rows;
  for (const auto& d : it->second) {
    ImpactRow row{d, std::nullopt};
    if (auto v = verdicts.find(d); v != verdicts.end()) row.verdict = v->second;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sreq
