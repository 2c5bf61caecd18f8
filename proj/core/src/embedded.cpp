#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "remixlab/data.hpp"
#include "remixlab/error.hpp"

namespace remixlab {
namespace embedded {
std::string_view lookup(std::string_view key) noexcept;
}

std::string data_file(std::string_view relative_path) {
  if (const char* dir = std::getenv("REMIXLAB_DATA_DIR"); dir && *dir) {
    std::filesystem::path p = std::filesystem::path(dir) / relative_path;
    if (std::ifstream in{p, std::ios::binary}) {
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
  }
  std::string_view builtin = embedded::lookup(relative_path);
  if (builtin.data() == nullptr) {
    throw Error(Errc::IoError, "no data file named " + std::string(relative_path));
  }
  return std::string(builtin);
}

}  // namespace remixlab
