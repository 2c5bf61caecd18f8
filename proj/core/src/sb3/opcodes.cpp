#include "remixlab/sb3/opcodes.hpp"

#include <algorithm>
#include <array>
#include <string_view>

namespace remixlab::sb3 {
namespace {

constexpr std::array<std::pair<std::string_view, OpcodeFamily>, 10>
    kPrefixes{{
        {"motion_", OpcodeFamily::Motion},
        {"looks_", OpcodeFamily::Looks},
        {"sound_", OpcodeFamily::Sound},
        {"event_", OpcodeFamily::Event},
        {"control_", OpcodeFamily::Control},
        {"sensing_", OpcodeFamily::Sensing},
        {"operator_", OpcodeFamily::Operator},
        {"data_", OpcodeFamily::Data},
        {"procedures_", OpcodeFamily::Procedures},
        {"argument_", OpcodeFamily::Argument},
    }};

constexpr std::array<std::string_view, 11> kHats{
    "event_whenflagclicked",
    "event_whenkeypressed",
    "event_whenthisspriteclicked",
    "event_whenstageclicked",
    "event_whenbackdropswitchesto",
    "event_whengreaterthan",
    "event_whenbroadcastreceived",
    "event_whentouchingobject",
    "control_start_as_clone",
    "procedures_definition",
    "videoSensing_whenMotionGreaterThan",
};

constexpr std::array<std::string_view, 19> kBooleans{
    "operator_gt",
    "operator_lt",
    "operator_equals",
    "operator_and",
    "operator_or",
    "operator_not",
    "operator_contains",
    "sensing_touchingobject",
    "sensing_touchingcolor",
    "sensing_coloristouchingcolor",
    "sensing_keypressed",
    "sensing_mousedown",
    "data_listcontainsitem",
    "argument_reporter_boolean",
    "pen_penIsDown",
    "microbit_isButtonPressed",
    "microbit_isTilted",
    "ev3_buttonPressed",
    "wedo2_isTilted",
};

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

OpcodeFamily opcode_family(std::string_view opcode) noexcept {
  for (const auto& [prefix, family] : kPrefixes) {
    if (starts_with(opcode, prefix)) return family;
  }
  return OpcodeFamily::Extension;
}

std::string_view to_string(OpcodeFamily family) noexcept {
  switch (family) {
    case OpcodeFamily::Motion: return "motion";
    case OpcodeFamily::Looks: return "looks";
    case OpcodeFamily::Sound: return "sound";
    case OpcodeFamily::Event: return "event";
    case OpcodeFamily::Control: return "control";
    case OpcodeFamily::Sensing: return "sensing";
    case OpcodeFamily::Operator: return "operator";
    case OpcodeFamily::Data: return "data";
    case OpcodeFamily::Procedures: return "procedures";
    case OpcodeFamily::Argument: return "argument";
    case OpcodeFamily::Extension: return "extension";
  }
  return "extension";
}

bool is_hat(std::string_view opcode) noexcept {
  if (std::find(kHats.begin(), kHats.end(), opcode) != kHats.end()) {
    return true;
  }
  // Extension hats follow the "<ext>_when..." naming convention
  // (makeymakey_whenMakeyKeyPressed, microbit_whenGesture, ...).
  if (opcode_family(opcode) == OpcodeFamily::Extension) {
    auto sep = opcode.find('_');
    return sep != std::string_view::npos &&
           starts_with(opcode.substr(sep + 1), "when");
  }
  return false;
}

bool is_loop(std::string_view opcode) noexcept {
  return opcode == "control_repeat" || opcode == "control_forever" ||
         opcode == "control_repeat_until" || opcode == "control_while" ||
         opcode == "control_for_each";
}

bool is_conditional(std::string_view opcode) noexcept {
  return opcode == "control_if" || opcode == "control_if_else";
}

bool is_boolean_reporter(std::string_view opcode) noexcept {
  return std::find(kBooleans.begin(), kBooleans.end(), opcode) !=
         kBooleans.end();
}

bool is_substack_slot(std::string_view slot) noexcept {
  return starts_with(slot, "SUBSTACK");
}

}  // namespace remixlab::sb3
