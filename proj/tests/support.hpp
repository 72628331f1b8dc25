#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "pk/dsl.hpp"

namespace pk::test {

inline std::string fixture_path(const std::string& name) { return std::string(PK_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ManifoldDocument load_document(const std::string& name) { return parse_manifold(read_fixture(name)); }

inline ParacontactStructure load_structure(const std::string& name) { return build_structure(load_document(name)); }

}  // namespace pk::test
