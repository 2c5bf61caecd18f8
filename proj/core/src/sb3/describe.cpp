#include "remixlab/sb3/describe.hpp"

#include <string_view>
#include <unordered_map>

namespace remixlab::sb3 {
namespace {

const std::unordered_map<std::string_view, std::string_view>& templates() {
  static const std::unordered_map<std::string_view, std::string_view> t{
      {"motion_movesteps", "move {STEPS} steps"},
      {"motion_turnright", "turn right {DEGREES} degrees"},
      {"motion_turnleft", "turn left {DEGREES} degrees"},
      {"motion_goto", "go to {TO}"},
      {"motion_gotoxy", "go to x: {X} y: {Y}"},
      {"motion_glideto", "glide {SECS} secs to {TO}"},
      {"motion_glidesecstoxy", "glide {SECS} secs to x: {X} y: {Y}"},
      {"motion_pointindirection", "point in direction {DIRECTION}"},
      {"motion_pointtowards", "point towards {TOWARDS}"},
      {"motion_changexby", "change x by {DX}"},
      {"motion_setx", "set x to {X}"},
      {"motion_changeyby", "change y by {DY}"},
      {"motion_sety", "set y to {Y}"},
      {"motion_ifonedgebounce", "if on edge, bounce"},
      {"motion_setrotationstyle", "set rotation style {STYLE}"},
      {"motion_xposition", "x position"},
      {"motion_yposition", "y position"},
      {"motion_direction", "direction"},
      {"looks_say", "say {MESSAGE}"},
      {"looks_sayforsecs", "say {MESSAGE} for {SECS} seconds"},
      {"looks_think", "think {MESSAGE}"},
      {"looks_thinkforsecs", "think {MESSAGE} for {SECS} seconds"},
      {"looks_show", "show"},
      {"looks_hide", "hide"},
      {"looks_switchcostumeto", "switch costume to {COSTUME}"},
      {"looks_nextcostume", "next costume"},
      {"looks_switchbackdropto", "switch backdrop to {BACKDROP}"},
      {"looks_nextbackdrop", "next backdrop"},
      {"looks_changeeffectby", "change {EFFECT} effect by {CHANGE}"},
      {"looks_seteffectto", "set {EFFECT} effect to {VALUE}"},
      {"looks_cleargraphiceffects", "clear graphic effects"},
      {"looks_changesizeby", "change size by {CHANGE}"},
      {"looks_setsizeto", "set size to {SIZE} %"},
      {"looks_size", "size"},
      {"sound_play", "start sound {SOUND_MENU}"},
      {"sound_playuntildone", "play sound {SOUND_MENU} until done"},
      {"sound_stopallsounds", "stop all sounds"},
      {"event_whenflagclicked", "when green flag clicked"},
      {"event_whenkeypressed", "when {KEY_OPTION} key pressed"},
      {"event_whenthisspriteclicked", "when this sprite clicked"},
      {"event_whenstageclicked", "when stage clicked"},
      {"event_whenbackdropswitchesto", "when backdrop switches to {BACKDROP}"},
      {"event_whengreaterthan", "when {WHENGREATERTHANMENU} > {VALUE}"},
      {"event_whenbroadcastreceived", "when I receive {BROADCAST_OPTION}"},
      {"event_broadcast", "broadcast {BROADCAST_INPUT}"},
      {"event_broadcastandwait", "broadcast {BROADCAST_INPUT} and wait"},
      {"control_wait", "wait {DURATION} seconds"},
      {"control_repeat", "repeat {TIMES}"},
      {"control_forever", "forever"},
      {"control_if", "if {CONDITION} then"},
      {"control_if_else", "if {CONDITION} then else"},
      {"control_wait_until", "wait until {CONDITION}"},
      {"control_repeat_until", "repeat until {CONDITION}"},
      {"control_stop", "stop {STOP_OPTION}"},
      {"control_start_as_clone", "when I start as a clone"},
      {"control_create_clone_of", "create clone of {CLONE_OPTION}"},
      {"control_delete_this_clone", "delete this clone"},
      {"sensing_touchingobject", "touching {TOUCHINGOBJECTMENU}?"},
      {"sensing_touchingcolor", "touching color {COLOR}?"},
      {"sensing_keypressed", "key {KEY_OPTION} pressed?"},
      {"sensing_mousedown", "mouse down?"},
      {"sensing_mousex", "mouse x"},
      {"sensing_mousey", "mouse y"},
      {"sensing_askandwait", "ask {QUESTION} and wait"},
      {"sensing_answer", "answer"},
      {"sensing_loudness", "loudness"},
      {"sensing_timer", "timer"},
      {"sensing_resettimer", "reset timer"},
      {"operator_add", "{NUM1} + {NUM2}"},
      {"operator_subtract", "{NUM1} - {NUM2}"},
      {"operator_multiply", "{NUM1} * {NUM2}"},
      {"operator_divide", "{NUM1} / {NUM2}"},
      {"operator_random", "pick random {FROM} to {TO}"},
      {"operator_lt", "{OPERAND1} < {OPERAND2}"},
      {"operator_gt", "{OPERAND1} > {OPERAND2}"},
      {"operator_equals", "{OPERAND1} = {OPERAND2}"},
      {"operator_and", "{OPERAND1} and {OPERAND2}"},
      {"operator_or", "{OPERAND1} or {OPERAND2}"},
      {"operator_not", "not {OPERAND}"},
      {"operator_join", "join {STRING1} {STRING2}"},
      {"data_setvariableto", "set {VARIABLE} to {VALUE}"},
      {"data_changevariableby", "change {VARIABLE} by {VALUE}"},
      {"data_showvariable", "show variable {VARIABLE}"},
      {"data_hidevariable", "hide variable {VARIABLE}"},
      {"data_variable", "{VARIABLE}"},
      {"data_listcontents", "{LIST}"},
      {"data_addtolist", "add {ITEM} to {LIST}"},
      {"data_deleteoflist", "delete {INDEX} of {LIST}"},
      {"data_deletealloflist", "delete all of {LIST}"},
      {"data_insertatlist", "insert {ITEM} at {INDEX} of {LIST}"},
      {"data_replaceitemoflist", "replace item {INDEX} of {LIST} with {ITEM}"},
      {"data_itemoflist", "item {INDEX} of {LIST}"},
      {"data_lengthoflist", "length of {LIST}"},
      {"data_listcontainsitem", "{LIST} contains {ITEM}?"},
      {"procedures_definition", "define {custom_block}"},
      {"pen_clear", "erase all"},
      {"pen_penDown", "pen down"},
      {"pen_penUp", "pen up"},
  };
  return t;
}

bool is_infix(std::string_view opcode) {
  return opcode == "operator_add" || opcode == "operator_subtract" ||
         opcode == "operator_multiply" || opcode == "operator_divide" ||
         opcode == "operator_lt" || opcode == "operator_gt" ||
         opcode == "operator_equals" || opcode == "operator_and" ||
         opcode == "operator_or";
}

std::string render(const SpriteForest& sprite, const BlockNode& node,
                   int depth);

std::string slot_text(const SpriteForest& sprite, const BlockNode& node,
                      std::string_view slot, int depth) {
  if (const Input* in = node.input(slot)) {
    if (const Literal* lit = in->literal()) return lit->text;
    const BlockNode* child = sprite.find(*in->block());
    if (!child) return "?";
    std::string text = render(sprite, *child, depth + 1);
    return is_infix(child->opcode) ? "(" + text + ")" : text;
  }
  if (const Field* f = node.field(slot)) return f->value;
  return "_";
}

std::string render(const SpriteForest& sprite, const BlockNode& node,
                   int depth) {
  if (depth > 32) return "...";
  if (node.opcode == "procedures_call" && node.proccode) {
    return *node.proccode;
  }
  auto it = templates().find(node.opcode);
  if (it == templates().end()) {
    std::string out = node.opcode;
    for (const auto& in : node.inputs) {
      out += " " + slot_text(sprite, node, in.slot, depth);
    }
    for (const auto& f : node.fields) out += " " + f.value;
    return out;
  }
  std::string_view tmpl = it->second;
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      std::size_t close = tmpl.find('}', i);
      out += slot_text(sprite, node, tmpl.substr(i + 1, close - i - 1), depth);
      i = close + 1;
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

}  // namespace

std::string describe_block(const SpriteForest& sprite, const BlockNode& node) {
  return render(sprite, node, 0);
}

std::string render_expression(const SpriteForest& sprite, const BlockId& id) {
  const BlockNode* node = sprite.find(id);
  return node ? render(sprite, *node, 0) : std::string("?");
}

}  // namespace remixlab::sb3
