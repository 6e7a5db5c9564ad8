#pragma once

#include <string>
#include <vector>

#include "qcrb/gaussian.hpp"
#include "qcrb/qfi.hpp"

namespace qcrb {

// Deterministic JSON assembly for the command-line tool: keys keep insertion
// order and every number is printed with 17 significant digits, so equal
// inputs produce byte-identical output.

std::string format_double(double v);

class JsonObject {
public:
  void add_number(const std::string& key, double v);
  void add_int(const std::string& key, long v);
  void add_bool(const std::string& key, bool v);
  void add_string(const std::string& key, const std::string& v);
  void add_null(const std::string& key);
  // Pre-encoded JSON (arrays, nested objects).
  void add_raw(const std::string& key, const std::string& raw);

  std::string str() const;

private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_escape(const std::string& s);
std::string json_number_array(const std::vector<double>& v);
std::string json_string_array(const std::vector<std::string>& v);
// Row-major entries as an array of rows.
std::string json_matrix(const std::vector<double>& entries, std::size_t dim);

// StateParams from a JSON object with optional keys alpha, psi, r, chi,
// n_th; anything else raises DomainError, as does malformed JSON.
StateParams params_from_json(const std::string& text);

std::string to_json(const FisherMatrix& m);

}  // namespace qcrb
