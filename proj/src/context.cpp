#include "galois/context.hpp"

#include <cstdio>
#include <unordered_set>

#include "galois/errors.hpp"

namespace galois {

FormalContext::FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                             const std::vector<std::vector<bool>>& incidence)
    : objects_(std::move(objects)), attributes_(std::move(attributes)) {
  validate_names();
  std::vector<std::string> problems;
  if (incidence.size() != objects_.size())
    problems.push_back("incidence has " + std::to_string(incidence.size()) + " rows for " +
                       std::to_string(objects_.size()) + " objects");
  for (std::size_t o = 0; o < incidence.size(); ++o)
    if (incidence[o].size() != attributes_.size())
      problems.push_back("incidence row " + std::to_string(o) + " has " + std::to_string(incidence[o].size()) +
                         " columns for " + std::to_string(attributes_.size()) + " attributes");
  if (!problems.empty()) throw ValidationError(std::move(problems));

  rows_.reserve(objects_.size());
  for (const auto& r : incidence) {
    AttributeSet row(attributes_.size());
    for (std::size_t a = 0; a < r.size(); ++a)
      if (r[a]) row.insert(a);
    rows_.push_back(std::move(row));
  }
  build_columns();
}

FormalContext FormalContext::from_rows(std::vector<std::string> objects, std::vector<std::string> attributes,
                                       std::vector<AttributeSet> rows) {
  FormalContext ctx;
  ctx.objects_ = std::move(objects);
  ctx.attributes_ = std::move(attributes);
  ctx.rows_ = std::move(rows);
  ctx.validate_names();
  std::vector<std::string> problems;
  if (ctx.rows_.size() != ctx.objects_.size())
    problems.push_back("incidence has " + std::to_string(ctx.rows_.size()) + " rows for " +
                       std::to_string(ctx.objects_.size()) + " objects");
  for (std::size_t o = 0; o < ctx.rows_.size(); ++o)
    if (ctx.rows_[o].universe() != ctx.attributes_.size())
      problems.push_back("incidence row " + std::to_string(o) + " has universe " +
                         std::to_string(ctx.rows_[o].universe()));
  if (!problems.empty()) throw ValidationError(std::move(problems));
  ctx.build_columns();
  return ctx;
}

void FormalContext::validate_names() const {
  std::vector<std::string> problems;
  std::unordered_set<std::string> seen;
  for (const auto& o : objects_)
    if (!seen.insert(o).second) problems.push_back("duplicate object '" + o + "'");
  seen.clear();
  for (const auto& a : attributes_)
    if (!seen.insert(a).second) problems.push_back("duplicate attribute '" + a + "'");
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

void FormalContext::build_columns() {
  columns_.assign(attributes_.size(), ObjectSet(objects_.size()));
  for (std::size_t o = 0; o < rows_.size(); ++o) rows_[o].for_each([&](std::size_t a) { columns_[a].insert(o); });
}

std::optional<std::size_t> FormalContext::find_attribute(const std::string& name) const {
  for (std::size_t i = 0; i < attributes_.size(); ++i)
    if (attributes_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> FormalContext::find_object(const std::string& name) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == name) return i;
  return std::nullopt;
}

std::size_t FormalContext::attribute_index(const std::string& name) const {
  if (auto i = find_attribute(name)) return *i;
  throw ResolutionError("unknown attribute '" + name + "'");
}

AttributeSet FormalContext::attribute_set(const std::vector<std::string>& names) const {
  AttributeSet s(attributes_.size());
  for (const auto& n : names) s.insert(attribute_index(n));
  return s;
}

std::vector<std::string> FormalContext::attribute_names(const AttributeSet& set) const {
  std::vector<std::string> out;
  set.for_each([&](std::size_t a) { out.push_back(attributes_.at(a)); });
  return out;
}

std::vector<std::string> FormalContext::object_names(const ObjectSet& set) const {
  std::vector<std::string> out;
  set.for_each([&](std::size_t o) { out.push_back(objects_.at(o)); });
  return out;
}

std::size_t FormalContext::incidence_size() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.count();
  return n;
}

std::string FormalContext::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  auto mix_string = [&](const std::string& s) {
    for (unsigned char c : s) mix(c);
    mix(0);
  };
  for (const auto& o : objects_) mix_string(o);
  mix(1);
  for (const auto& a : attributes_) mix_string(a);
  mix(1);
  for (const auto& r : rows_)
    for (std::size_t a = 0; a < attributes_.size(); ++a) mix(r.contains(a) ? 'X' : '.');
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FormalContext FormalContext::subcontext(const std::vector<std::size_t>& object_rows,
                                        const std::vector<std::size_t>& attribute_columns) const {
  std::vector<std::string> objs;
  std::vector<std::string> attrs;
  objs.reserve(object_rows.size());
  for (auto o : object_rows) objs.push_back(objects_.at(o));
  for (auto a : attribute_columns) attrs.push_back(attributes_.at(a));
  std::vector<AttributeSet> rows;
  rows.reserve(object_rows.size());
  for (auto o : object_rows) {
    AttributeSet r(attribute_columns.size());
    for (std::size_t k = 0; k < attribute_columns.size(); ++k)
      if (rows_.at(o).contains(attribute_columns[k])) r.insert(k);
    rows.push_back(std::move(r));
  }
  return from_rows(std::move(objs), std::move(attrs), std::move(rows));
}

AttributeSet derive_objects(const FormalContext& ctx, const ObjectSet& objects) {
  if (objects.universe() != ctx.object_count())
    throw BoundsError("object set universe " + std::to_string(objects.universe()) + " does not match context with " +
                      std::to_string(ctx.object_count()) + " objects");
  AttributeSet out = ctx.all_attributes();
  objects.for_each([&](std::size_t o) { out &= ctx.row(o); });
  return out;
}

ObjectSet derive_attributes(const FormalContext& ctx, const AttributeSet& attributes) {
  if (attributes.universe() != ctx.attribute_count())
    throw BoundsError("attribute set universe " + std::to_string(attributes.universe()) +
                      " does not match context with " + std::to_string(ctx.attribute_count()) + " attributes");
  ObjectSet out = ctx.all_objects();
  attributes.for_each([&](std::size_t a) { out &= ctx.column(a); });
  return out;
}

AttributeSet closure(const FormalContext& ctx, const AttributeSet& attributes) {
  return derive_objects(ctx, derive_attributes(ctx, attributes));
}

}  // namespace galois
