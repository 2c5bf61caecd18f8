#include "remixlab/scaffold/templates.hpp"

#include "remixlab/data.hpp"
#include "remixlab/error.hpp"

namespace remixlab::scaffold {

std::string render_template(std::string_view tmpl, const TemplateVars& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    std::size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw Error(Errc::InvalidArgument, "unterminated placeholder",
                  "byte " + std::to_string(open));
    }
    std::string_view name = tmpl.substr(open + 2, close - open - 2);
    auto it = vars.find(name);
    if (it == vars.end()) {
      throw Error(Errc::InvalidArgument, "no value for {{" + std::string(name) + "}}",
                  "byte " + std::to_string(open));
    }
    out += it->second;
    pos = close + 2;
  }
  return out;
}

std::string prompt_template(std::string_view id) {
  return data_file("prompts/" + std::string(id) + ".tmpl");
}

}  // namespace remixlab::scaffold
