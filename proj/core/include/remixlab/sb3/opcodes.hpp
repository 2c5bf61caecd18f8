#pragma once

#include <string_view>

namespace remixlab::sb3 {

// Palette family an opcode belongs to, from its prefix. Anything outside
// the built-in palettes (pen_, music_, videoSensing_, ...) is an extension.
enum class OpcodeFamily {
  Motion,
  Looks,
  Sound,
  Event,
  Control,
  Sensing,
  Operator,
  Data,
  Procedures,
  Argument,
  Extension,
};

OpcodeFamily opcode_family(std::string_view opcode) noexcept;
std::string_view to_string(OpcodeFamily family) noexcept;

// Event-entry ("hat") opcodes start a script and never have a parent.
bool is_hat(std::string_view opcode) noexcept;

// C-shaped blocks whose SUBSTACK slots hold nested stacks.
bool is_loop(std::string_view opcode) noexcept;
bool is_conditional(std::string_view opcode) noexcept;

// Reporters with a true/false result (hexagonal slots in the editor).
bool is_boolean_reporter(std::string_view opcode) noexcept;

bool is_substack_slot(std::string_view slot) noexcept;

}  // namespace remixlab::sb3
