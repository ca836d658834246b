#include "hinrisk/schema.hpp"

#include <algorithm>

#include "hinrisk/error.hpp"

namespace hinrisk {

TypeId Schema::add_object_type(const std::string& name) {
  if (find_object_type(name)) {
    throw Error(Errc::DuplicateId, "object type '" + name + "' already registered");
  }
  object_types_.push_back(ObjectType{name});
  return static_cast<TypeId>(object_types_.size() - 1);
}

RelId Schema::add_relation(const std::string& name, TypeId source, TypeId target,
                           const std::string& inverse_name) {
  if (source >= object_types_.size() || target >= object_types_.size()) {
    throw Error(Errc::UnknownType, "relation '" + name + "' references unknown object type");
  }
  if (find_relation(name, source, target)) {
    throw Error(Errc::DuplicateId, "relation '" + name + "' with these endpoints already registered");
  }
  const bool self_inverse = (inverse_name == name && source == target);
  RelId fwd = static_cast<RelId>(relations_.size());
  relations_.push_back(RelationType{name, source, target, fwd});
  if (!self_inverse) {
    if (find_relation(inverse_name, target, source)) {
      throw Error(Errc::DuplicateId,
                  "inverse relation '" + inverse_name + "' with these endpoints already registered");
    }
    RelId inv = static_cast<RelId>(relations_.size());
    relations_.push_back(RelationType{inverse_name, target, source, fwd});
    relations_[fwd].inverse = inv;
  }
  return fwd;
}

std::optional<TypeId> Schema::find_object_type(const std::string& name) const {
  for (std::size_t i = 0; i < object_types_.size(); ++i) {
    if (object_types_[i].name == name) return static_cast<TypeId>(i);
  }
  return std::nullopt;
}

std::optional<RelId> Schema::find_relation(const std::string& name, TypeId source,
                                           TypeId target) const {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    const auto& r = relations_[i];
    if (r.name == name && r.source == source && r.target == target) {
      return static_cast<RelId>(i);
    }
  }
  return std::nullopt;
}

std::vector<RelId> Schema::relations_named(const std::string& name) const {
  std::vector<RelId> out;
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) out.push_back(static_cast<RelId>(i));
  }
  return out;
}

std::vector<RelId> Schema::relations_from(TypeId type) const {
  std::vector<RelId> out;
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].source == type) out.push_back(static_cast<RelId>(i));
  }
  std::sort(out.begin(), out.end(), [this](RelId a, RelId b) {
    const auto& ra = relations_[a];
    const auto& rb = relations_[b];
    if (ra.name != rb.name) return ra.name < rb.name;
    return object_types_[ra.target].name < object_types_[rb.target].name;
  });
  return out;
}

void Schema::validate() const {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    const auto& r = relations_[i];
    if (r.source >= object_types_.size() || r.target >= object_types_.size()) {
      throw Error(Errc::UnknownType, "relation '" + r.name + "' has unknown endpoint type");
    }
    if (r.inverse >= relations_.size()) {
      throw Error(Errc::Internal, "relation '" + r.name + "' has out-of-range inverse");
    }
    const auto& inv = relations_[r.inverse];
    if (inv.inverse != i) {
      throw Error(Errc::Internal, "inverse of inverse of '" + r.name + "' is not the original");
    }
    if (inv.source != r.target || inv.target != r.source) {
      throw Error(Errc::Internal, "inverse endpoints of '" + r.name + "' do not mirror the forward relation");
    }
  }
}

Schema default_sme_schema() {
  Schema s;
  TypeId e = s.add_object_type("enterprise");
  TypeId p = s.add_object_type("person");
  TypeId c = s.add_object_type("commodity");
  TypeId n = s.add_object_type("news");

  s.add_relation("parent", e, e, "subsidiary");
  s.add_relation("supply", e, e, "sales");
  s.add_relation("control", e, p, "control");
  s.add_relation("shareholder", e, p, "shareholder");
  s.add_relation("manager", e, p, "manager");
  s.add_relation("employee", e, p, "employee");
  s.add_relation("boardmember", e, p, "boardmember");
  s.add_relation("produce", e, c, "produce");
  s.add_relation("report", e, n, "report");
  s.add_relation("relate", p, p, "relate");

  s.validate();
  return s;
}

}  // namespace hinrisk
