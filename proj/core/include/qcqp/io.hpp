#pragma once

#include <stdexcept>
#include <string>

#include "qcqp/instance.hpp"

namespace qcqp {

// Malformed input. byte_offset is the position the parser stopped at,
// or 0 when the failure is structural rather than lexical.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t byte_offset)
      : std::runtime_error(msg), byte_offset(byte_offset) {}
  std::size_t byte_offset = 0;
};

struct VersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kInstanceSchemaVersion = 1;

// Text JSON, one instance per file. Matrices are row-major arrays of arrays;
// infinite bounds are encoded as the strings "+inf" / "-inf".
void save_instance(const QcqpInstance& inst, const std::string& path);
QcqpInstance load_instance(const std::string& path);

// Same encoding, in-memory. Used by the file functions and by tests.
std::string instance_to_json(const QcqpInstance& inst);
QcqpInstance instance_from_json(const std::string& text);

}  // namespace qcqp
