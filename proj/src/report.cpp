#include "fravar/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fravar {

std::string format_double(double v) {
  if (!std::isfinite(v)) {
    // JSON has no infinity/nan literals
    return v > 0 ? "1e999" : (v < 0 ? "-1e999" : "null");
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json Json::object() {
  Json j;
  j.kind_ = Kind::object;
  return j;
}

Json Json::array() {
  Json j;
  j.kind_ = Kind::array;
  return j;
}

Json Json::number(double v) {
  Json j;
  j.kind_ = Kind::number;
  j.number_ = v;
  return j;
}

Json Json::integer(long long v) {
  Json j;
  j.kind_ = Kind::integer;
  j.integer_ = v;
  return j;
}

Json Json::string(std::string v) {
  Json j;
  j.kind_ = Kind::string;
  j.string_ = std::move(v);
  return j;
}

Json Json::boolean(bool v) {
  Json j;
  j.kind_ = Kind::boolean;
  j.bool_ = v;
  return j;
}

Json& Json::set(const std::string& key, Json v) {
  if (kind_ != Kind::object) throw std::logic_error("Json::set on non-object");
  members_.emplace_back(key, std::move(v));
  return *this;
}

Json& Json::push(Json v) {
  if (kind_ != Kind::array) throw std::logic_error("Json::push on non-array");
  elements_.push_back(std::move(v));
  return *this;
}

namespace {

void escape_into(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

}  // namespace

void Json::dump_into(std::string& out, int indent, int level) const {
  const std::string pad(static_cast<std::size_t>(indent) * level, ' ');
  const std::string inner_pad(static_cast<std::size_t>(indent) * (level + 1), ' ');
  switch (kind_) {
    case Kind::number:
      out += format_double(number_);
      break;
    case Kind::integer:
      out += std::to_string(integer_);
      break;
    case Kind::string:
      escape_into(string_, out);
      break;
    case Kind::boolean:
      out += bool_ ? "true" : "false";
      break;
    case Kind::object: {
      if (members_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < members_.size(); ++i) {
        out += inner_pad;
        escape_into(members_[i].first, out);
        out += ": ";
        members_[i].second.dump_into(out, indent, level + 1);
        if (i + 1 < members_.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      break;
    }
    case Kind::array: {
      if (elements_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < elements_.size(); ++i) {
        out += inner_pad;
        elements_[i].dump_into(out, indent, level + 1);
        if (i + 1 < elements_.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      break;
    }
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  dump_into(out, indent, 0);
  out += '\n';
  return out;
}

Json make_report(const std::string& kind) {
  Json j = Json::object();
  j.set("schema", Json::string("fravar-report/1"));
  j.set("kind", Json::string(kind));
  return j;
}

}  // namespace fravar
