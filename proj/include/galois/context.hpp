#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "galois/index_set.hpp"

namespace galois {

/// A formal context (objects, attributes, incidence).
///
/// Immutable once constructed. Rows (object intents) and columns (attribute
/// extents) are both stored so that either derivation is a sequence of word-wise
/// intersections. Attribute order is fixed at construction; lectic order and
/// every enumeration in this library depend on it.
class FormalContext {
 public:
  FormalContext() = default;

  /// Throws ValidationError on duplicate names or ragged incidence.
  FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                const std::vector<std::vector<bool>>& incidence);

  /// Row-set form: rows[o] is the intent of object o.
  static FormalContext from_rows(std::vector<std::string> objects, std::vector<std::string> attributes,
                                 std::vector<AttributeSet> rows);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t attribute_count() const noexcept { return attributes_.size(); }
  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<std::string>& attributes() const noexcept { return attributes_; }

  bool incident(std::size_t object, std::size_t attribute) const { return rows_.at(object).contains(attribute); }
  const AttributeSet& row(std::size_t object) const { return rows_.at(object); }
  const ObjectSet& column(std::size_t attribute) const { return columns_.at(attribute); }

  std::optional<std::size_t> find_attribute(const std::string& name) const;
  std::optional<std::size_t> find_object(const std::string& name) const;
  /// Throws ResolutionError.
  std::size_t attribute_index(const std::string& name) const;

  AttributeSet empty_attributes() const { return AttributeSet(attributes_.size()); }
  AttributeSet all_attributes() const { return AttributeSet::full(attributes_.size()); }
  ObjectSet empty_objects() const { return ObjectSet(objects_.size()); }
  ObjectSet all_objects() const { return ObjectSet::full(objects_.size()); }

  AttributeSet attribute_set(const std::vector<std::string>& names) const;
  std::vector<std::string> attribute_names(const AttributeSet& set) const;
  std::vector<std::string> object_names(const ObjectSet& set) const;

  /// Number of incident pairs |I|.
  std::size_t incidence_size() const noexcept;

  /// Stable 64-bit FNV-1a digest of names and incidence, as 16 hex digits.
  std::string fingerprint() const;

  /// Subcontext on the given object rows and attribute columns, in the given order.
  FormalContext subcontext(const std::vector<std::size_t>& object_rows,
                           const std::vector<std::size_t>& attribute_columns) const;

  bool operator==(const FormalContext& other) const {
    return objects_ == other.objects_ && attributes_ == other.attributes_ && rows_ == other.rows_;
  }

 private:
  void build_columns();
  void validate_names() const;

  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<AttributeSet> rows_;
  std::vector<ObjectSet> columns_;
};

/// X' : the attributes shared by every object in X. derive_objects(ctx, {}) is all attributes.
AttributeSet derive_objects(const FormalContext& ctx, const ObjectSet& objects);

/// Y' : the objects having every attribute in Y. derive_attributes(ctx, {}) is all objects.
ObjectSet derive_attributes(const FormalContext& ctx, const AttributeSet& attributes);

/// Y'' .
AttributeSet closure(const FormalContext& ctx, const AttributeSet& attributes);

struct Concept {
  ObjectSet extent;
  AttributeSet intent;
  bool operator==(const Concept&) const = default;
};

}  // namespace galois
