#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "levinlab/instances.hpp"

namespace levin {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"variant": ..., fields...}. Computed parts (images of non-members) are
// written with their label and cannot be read back.
nlohmann::json to_json(const InstanceDescription& d);
InstanceDescription from_json(const nlohmann::json& j);

// False when the description contains computed parts.
bool serializable(const InstanceDescription& d);

struct InstanceFile {
  int format = 1;
  std::string problem;
  InstanceDescription instance;
};

std::string write_instance_file(const InstanceFile& f);
InstanceFile read_instance_file(const std::string& text);

Rational parse_rational(const std::string& text);

}  // namespace levin
