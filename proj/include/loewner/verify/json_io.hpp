#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "loewner/errors.hpp"
#include "loewner/generators.hpp"
#include "loewner/measures.hpp"

namespace loewner::verify {

using Json = nlohmann::json;

/// Configuration problem reported to the user. Semantic errors carry a JSON
/// pointer to the offending value; syntax errors carry a byte offset.
class ConfigError : public Error {
 public:
  enum class Kind { Syntax, Semantic, UnknownCheck };

  ConfigError(Kind kind, std::string path, const std::string& message, std::size_t offset = 0);

  Kind kind() const noexcept { return kind_; }
  const std::string& path() const noexcept { return path_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::string path_;
  std::size_t offset_;
};

/// Parses UTF-8 JSON text; throws ConfigError(Syntax) with the byte offset.
Json parse_json(std::string_view text);

/// Typed field access with path-qualified errors.
double get_number(const Json& obj, const std::string& key, const std::string& path);
double get_number_or(const Json& obj, const std::string& key, const std::string& path,
                     double fallback);
/// Rejects keys outside `allowed`.
void require_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                  const std::string& path);

AtomicCircleMeasure measure_from_json(const Json& j, const std::string& path);
Json measure_to_json(const AtomicCircleMeasure& m);

MeasureSchedule schedule_from_json(const Json& j, const std::string& path);
Json schedule_to_json(const MeasureSchedule& s);

/// `skip_probability` disables the probability check of corollary measures
/// (negative-control hook).
FieldSpec field_from_json(const Json& j, const std::string& path, bool skip_probability = false);
Json field_to_json(const FieldSpec& f);

}  // namespace loewner::verify
