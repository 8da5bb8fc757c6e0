#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace fravar {

/// Minimal JSON document builder for reports: insertion-ordered objects,
/// doubles at 17 significant digits, deterministic byte-for-byte output.
/// Every report carries "schema": "fravar-report/1".
class Json {
 public:
  static Json object();
  static Json array();
  static Json number(double v);
  static Json integer(long long v);
  static Json string(std::string v);
  static Json boolean(bool v);

  Json& set(const std::string& key, Json v);  // object only
  Json& push(Json v);                         // array only

  std::string dump(int indent = 2) const;

 private:
  enum class Kind { object, array, number, integer, string, boolean };
  Kind kind_ = Kind::object;
  double number_ = 0.0;
  long long integer_ = 0;
  bool bool_ = false;
  std::string string_;
  std::vector<std::pair<std::string, Json>> members_;
  std::vector<Json> elements_;

  void dump_into(std::string& out, int indent, int level) const;
};

Json make_report(const std::string& kind);

std::string format_double(double v);  // %.17g

}  // namespace fravar
