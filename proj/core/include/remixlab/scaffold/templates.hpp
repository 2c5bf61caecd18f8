#pragma once

#include <map>
#include <string>
#include <string_view>

namespace remixlab::scaffold {

using TemplateVars = std::map<std::string, std::string, std::less<>>;

/// Replaces every {{name}} with vars[name]. Throws InvalidArgument on an
/// unknown or unterminated placeholder. Extra vars are ignored.
std::string render_template(std::string_view tmpl, const TemplateVars& vars);

/// Shipped template "prompts/<id>.tmpl".
std::string prompt_template(std::string_view id);

}  // namespace remixlab::scaffold
