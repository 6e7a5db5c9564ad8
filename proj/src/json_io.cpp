#include "qcrb/json_io.hpp"

#include <cstdio>

#include <json.hpp>

#include "qcrb/errors.hpp"

namespace qcrb {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonObject::add_number(const std::string& key, double v) {
  fields_.emplace_back(key, format_double(v));
}

void JsonObject::add_int(const std::string& key, long v) {
  fields_.emplace_back(key, std::to_string(v));
}

void JsonObject::add_bool(const std::string& key, bool v) {
  fields_.emplace_back(key, v ? "true" : "false");
}

void JsonObject::add_string(const std::string& key, const std::string& v) {
  fields_.emplace_back(key, "\"" + json_escape(v) + "\"");
}

void JsonObject::add_null(const std::string& key) {
  fields_.emplace_back(key, "null");
}

void JsonObject::add_raw(const std::string& key, const std::string& raw) {
  fields_.emplace_back(key, raw);
}

std::string JsonObject::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [key, value] : fields_) {
    if (!first) out += ",";
    first = false;
    out += "\"" + json_escape(key) + "\":" + value;
  }
  out += "}";
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_number_array(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out + "]";
}

std::string json_string_array(const std::vector<std::string>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += "\"" + json_escape(v[i]) + "\"";
  }
  return out + "]";
}

std::string json_matrix(const std::vector<double>& entries, std::size_t dim) {
  std::string out = "[";
  for (std::size_t i = 0; i < dim; ++i) {
    if (i) out += ",";
    out += "[";
    for (std::size_t j = 0; j < dim; ++j) {
      if (j) out += ",";
      out += format_double(entries[i * dim + j]);
    }
    out += "]";
  }
  return out + "]";
}

StateParams params_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid parameter JSON: ") + e.what());
  }
  if (!j.is_object())
    throw DomainError("invalid parameter JSON: expected an object");

  StateParams p;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number())
      throw DomainError("invalid parameter JSON: '" + key +
                        "' must be a number");
    const double v = value.get<double>();
    if (key == "alpha") p.alpha = v;
    else if (key == "psi") p.psi = v;
    else if (key == "r") p.r = v;
    else if (key == "chi") p.chi = v;
    else if (key == "n_th") p.n_th = v;
    else throw DomainError("invalid parameter JSON: unknown key '" + key + "'");
  }
  return p;
}

std::string to_json(const FisherMatrix& m) {
  JsonObject obj;
  obj.add_raw("labels", json_string_array(m.labels));
  obj.add_raw("entries", json_matrix(m.entries, m.dim()));
  return obj.str();
}

}  // namespace qcrb
