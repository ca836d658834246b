#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hinrisk {

using TypeId = std::uint32_t;
using RelId = std::uint32_t;

struct ObjectType {
  std::string name;
};

// A directed relation between two object types. Relations always come in
// inverse pairs; a pair may share one name (e.g. `control` enterprise->person
// and `control` person->enterprise) or use two names (`parent`/`subsidiary`).
// (name, source, target) is the unique key within a schema.
struct RelationType {
  std::string name;
  TypeId source = 0;
  TypeId target = 0;
  RelId inverse = 0;  // id of the inverse relation; may equal own id (self-inverse)
};

class Schema {
 public:
  TypeId add_object_type(const std::string& name);

  // Registers `name`: source->target and its inverse `inverse_name`:
  // target->source as a mutual pair. Returns the forward relation id.
  // With inverse_name == name and source == target the relation is its own
  // inverse (a single symmetric relation).
  RelId add_relation(const std::string& name, TypeId source, TypeId target,
                     const std::string& inverse_name);

  std::optional<TypeId> find_object_type(const std::string& name) const;
  std::optional<RelId> find_relation(const std::string& name, TypeId source,
                                     TypeId target) const;
  // All relations with the given name, any endpoints.
  std::vector<RelId> relations_named(const std::string& name) const;
  // All relations whose source is `type`, sorted by (name, target type name).
  std::vector<RelId> relations_from(TypeId type) const;

  const ObjectType& object_type(TypeId id) const { return object_types_.at(id); }
  const RelationType& relation(RelId id) const { return relations_.at(id); }
  RelId inverse(RelId id) const { return relations_.at(id).inverse; }

  std::size_t object_type_count() const { return object_types_.size(); }
  std::size_t relation_count() const { return relations_.size(); }

  // Checks closure invariants: endpoint types exist, inverse of inverse is the
  // original, inverse endpoints mirror the forward ones. Throws on violation.
  void validate() const;

 private:
  std::vector<ObjectType> object_types_;
  std::vector<RelationType> relations_;
};

// The SME universe: object types enterprise/person/commodity/news and the
// default relation inventory (parent/subsidiary, supply/sales, control,
// shareholder, manager, employee, boardmember, produce, report, relate).
// Enterprise-person, enterprise-commodity and enterprise-news relations are
// traversable in both directions under the same name; relate is symmetric.
Schema default_sme_schema();

}  // namespace hinrisk
