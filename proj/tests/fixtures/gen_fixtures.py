#!/usr/bin/env python3
"""Regenerates the fixture projects under tests/fixtures/.

Each fixture is described with a tiny script DSL and emitted in the Scratch 3
project.json encoding (primitive input arrays, shadow menu blocks, substacks,
procedure mutations, loose top-level reporters). The .sb3 archives are written
with Python's zipfile so the C++ archive reader is checked against an
independent zip producer.

Usage: python3 tests/fixtures/gen_fixtures.py
"""

import json
import pathlib
import zipfile

HERE = pathlib.Path(__file__).resolve().parent
SRC = HERE / "src"
SB3 = HERE / "sb3"

BOOLEAN_SLOTS = {"CONDITION", "OPERAND1", "OPERAND2", "OPERAND"}

PRIM = {"num": 4, "pos": 5, "whole": 6, "int": 7, "angle": 8, "color": 9,
        "str": 10, "bcast": 11, "var": 12, "list": 13}


class B:
    """One block in the DSL: opcode, inputs, fields, substacks, mutation."""

    def __init__(self, op, inputs=None, fields=None, sub=None, mutation=None,
                 bool_inputs=False):
        self.op = op
        self.inputs = inputs or {}
        self.fields = fields or {}
        self.sub = sub or []
        self.mutation = mutation
        self.bool_inputs = bool_inputs


def num(v):
    return ("num", str(v))


def text(v):
    return ("str", str(v))


def var(name, vid):
    return ("var", name, vid)


def lst(name, lid):
    return ("list", name, lid)


def bcast(name, bid):
    return ("bcast", name, bid)


def menu(opcode, field, value):
    return ("menu", opcode, field, value)


class Sprite:
    def __init__(self, name, prefix, is_stage=False, variables=None,
                 lists=None, broadcasts=None):
        self.name = name
        self.prefix = prefix
        self.is_stage = is_stage
        self.variables = variables or {}
        self.lists = lists or {}
        self.broadcasts = broadcasts or {}
        self.blocks = {}
        self.counter = 0
        self.script_y = 0

    def _id(self):
        self.counter += 1
        return f"{self.prefix}{self.counter:02d}"

    def script(self, *blocks):
        self._stack(list(blocks), parent=None, top=True)
        return self

    def loose(self, kind, name, ident):
        bid = self._id()
        self.script_y += 80
        self.blocks[bid] = [PRIM[kind], name, ident, 400, self.script_y]
        return self

    def _stack(self, blocks, parent, top):
        prev = None
        first = None
        for b in blocks:
            bid = self._emit(b, parent=prev if prev else parent,
                             top=top and prev is None)
            if prev:
                self.blocks[prev]["next"] = bid
            first = first or bid
            prev = bid
        return first

    def _emit(self, b, parent, top):
        bid = self._id()
        entry = {"opcode": b.op, "next": None, "parent": parent,
                 "inputs": {}, "fields": {}, "shadow": False,
                 "topLevel": top}
        if top:
            self.script_y += 120
            entry["x"] = 40
            entry["y"] = self.script_y
        self.blocks[bid] = entry
        for slot, val in b.inputs.items():
            entry["inputs"][slot] = self._input(bid, slot, val, b.bool_inputs)
        for name, val in b.fields.items():
            if isinstance(val, tuple):
                entry["fields"][name] = [val[0], val[1]]
            else:
                entry["fields"][name] = [val, None]
        for i, stack in enumerate(b.sub):
            slot = "SUBSTACK" if i == 0 else f"SUBSTACK{i + 1}"
            if stack:
                entry["inputs"][slot] = [2, self._stack(stack, bid, False)]
        if b.mutation is not None:
            entry["mutation"] = b.mutation
        return bid

    def _input(self, owner, slot, val, bool_inputs):
        if isinstance(val, B):
            child = self._emit(val, parent=owner, top=False)
            if slot in BOOLEAN_SLOTS and (bool_inputs or slot == "CONDITION"):
                return [2, child]
            return [3, child, [10, ""]]
        kind = val[0]
        if kind == "menu":
            _, opcode, field, value = val
            mid = self._id()
            self.blocks[mid] = {"opcode": opcode, "next": None,
                                "parent": owner, "inputs": {},
                                "fields": {field: [value, None]},
                                "shadow": True, "topLevel": False}
            return [1, mid]
        if kind == "proto":
            _, mutation = val
            pid = self._id()
            self.blocks[pid] = {"opcode": "procedures_prototype",
                                "next": None, "parent": owner, "inputs": {},
                                "fields": {}, "shadow": True,
                                "topLevel": False, "mutation": mutation}
            return [1, pid]
        if kind in ("var", "list"):
            return [3, [PRIM[kind], val[1], val[2]], [10, ""]]
        if kind == "bcast":
            return [1, [PRIM[kind], val[1], val[2]]]
        return [1, [PRIM[kind], val[1]]]

    def to_json(self, layer):
        return {
            "isStage": self.is_stage,
            "name": self.name,
            "variables": {k: [v[0], v[1]] for k, v in self.variables.items()},
            "lists": {k: [v[0], v[1]] for k, v in self.lists.items()},
            "broadcasts": self.broadcasts,
            "blocks": self.blocks,
            "comments": {},
            "currentCostume": 0,
            "costumes": [{
                "name": ("backdrop1" if self.is_stage else "costume1"),
                "dataFormat": "svg",
                "assetId": f"{self.prefix}0000000000000000000000000000a1"[:32],
                "md5ext": f"{self.prefix}0000000000000000000000000000a1"[:32]
                + ".svg",
                "rotationCenterX": 48, "rotationCenterY": 50,
            }],
            "sounds": [],
            "volume": 100,
            "layerOrder": layer,
        }


def project(*targets):
    return {
        "targets": [t.to_json(i) for i, t in enumerate(targets)],
        "monitors": [],
        "extensions": [],
        "meta": {"semver": "3.0.0", "vm": "0.2.0",
                 "agent": "remixlab fixture generator"},
    }


def stage(**kw):
    return Sprite("Stage", "st", is_stage=True, **kw)


FLAG = "event_whenflagclicked"


def fixtures():
    out = {}

    out["empty"] = project(stage())

    # Two sprites, 14 blocks, 4 scripts; the Soccer Ball's forever/if/change
    # score stack is the nested control-dependency case.
    st = stage(variables={"varScore": ["score", 0]})
    striker = Sprite("Striker", "sk")
    striker.script(
        B(FLAG),
        B("data_setvariableto", inputs={"VALUE": text(0)},
          fields={"VARIABLE": ("score", "varScore")}),
        B("motion_gotoxy", inputs={"X": num(-150), "Y": num(0)}),
        B("control_repeat", inputs={"TIMES": num(10)},
          sub=[[B("motion_movesteps", inputs={"STEPS": num(10)})]]),
    )
    striker.script(
        B("event_whenkeypressed", fields={"KEY_OPTION": "space"}),
        B("motion_turnright", inputs={"DEGREES": num(15)}),
    )
    ball = Sprite("Soccer Ball", "ba")
    ball.script(
        B(FLAG),
        B("control_forever", sub=[[
            B("control_if",
              inputs={"CONDITION": B(
                  "sensing_touchingobject",
                  inputs={"TOUCHINGOBJECTMENU": menu(
                      "sensing_touchingobjectmenu", "TOUCHINGOBJECTMENU",
                      "Striker")})},
              sub=[[
                  B("data_changevariableby", inputs={"VALUE": num(1)},
                    fields={"VARIABLE": ("score", "varScore")}),
                  B("motion_gotoxy", inputs={"X": num(0), "Y": num(0)}),
              ]]),
        ]]),
    )
    ball.script(B("event_whenthisspriteclicked"))
    out["soccer_min"] = project(st, striker, ball)

    s = Sprite("Sprite1", "lg")
    s.script(B("control_if"))
    out["logic_levels"] = project(stage(), s)

    cat = Sprite("Cat", "ca")
    cat.script(B(FLAG), B("motion_movesteps", inputs={"STEPS": num(10)}))
    out["single_move"] = project(stage(), cat)

    cat = Sprite("Cat", "ca")
    cat.script(B(FLAG), B("control_forever", sub=[[
        B("motion_movesteps", inputs={"STEPS": num(10)})]]))
    out["forever_move"] = project(stage(), cat)

    cat = Sprite("Cat", "ca")
    cat.script(B(FLAG), B("control_forever", sub=[[
        B("control_if",
          inputs={"CONDITION": B("sensing_touchingobject", inputs={
              "TOUCHINGOBJECTMENU": menu("sensing_touchingobjectmenu",
                                         "TOUCHINGOBJECTMENU", "_edge_")})},
          sub=[[B("motion_ifonedgebounce")]])]]))
    out["bounce"] = project(stage(), cat)

    cat = Sprite("Cat", "ca")
    cat.script(B(FLAG), B("control_forever", sub=[[
        B("control_if_else",
          inputs={"CONDITION": B(
              "operator_or", bool_inputs=True, inputs={
                  "OPERAND1": B("operator_lt", inputs={
                      "OPERAND1": B("motion_xposition"),
                      "OPERAND2": text(-210)}),
                  "OPERAND2": B("sensing_keypressed", inputs={
                      "KEY_OPTION": menu("sensing_keyoptions", "KEY_OPTION",
                                         "space")})})},
          sub=[[B("motion_changexby", inputs={"DX": num(-5)})],
               [B("looks_say", inputs={"MESSAGE": text("hi")})]])]]))
    out["if_else_logic"] = project(stage(), cat)

    st = stage(broadcasts={"bcGo": "go"})
    cat = Sprite("Cat", "ca")
    cat.script(B(FLAG), B("control_wait", inputs={"DURATION": num(1)}),
               B("event_broadcast", inputs={
                   "BROADCAST_INPUT": bcast("go", "bcGo")}))
    dog = Sprite("Dog", "do")
    dog.script(
        B("event_whenbroadcastreceived",
          fields={"BROADCAST_OPTION": ("go", "bcGo")}),
        B("looks_say", inputs={"MESSAGE": text("hello")}),
        B("control_wait_until", inputs={"CONDITION": B("sensing_mousedown")}),
        B("control_stop", fields={"STOP_OPTION": "all"},
          mutation={"tagName": "mutation", "children": [],
                    "hasnext": "false"}),
    )
    out["broadcast_sync"] = project(st, cat, dog)

    star = Sprite("Star", "sr")
    star.script(B(FLAG), B("looks_hide"), B(
        "control_repeat", inputs={"TIMES": num(5)},
        sub=[[B("control_create_clone_of", inputs={
            "CLONE_OPTION": menu("control_create_clone_of_menu",
                                 "CLONE_OPTION", "_myself_")})]]))
    jump = {"tagName": "mutation", "children": [], "proccode": "jump",
            "argumentids": "[]", "argumentnames": "[]",
            "argumentdefaults": "[]", "warp": "false"}
    star.script(B("control_start_as_clone"), B("looks_show"),
                B("procedures_call", mutation=dict(jump)))
    star.script(
        B("procedures_definition",
          inputs={"custom_block": ("proto", dict(jump))}),
        B("motion_changeyby", inputs={"DY": num(10)}))
    out["clones_custom"] = project(stage(), star)

    robot = Sprite("Robot", "ro", variables={"varCount": ["count", 0]},
                   lists={"lstInv": ["inventory", []]})
    robot.script(
        B(FLAG),
        B("data_deletealloflist", fields={"LIST": ("inventory", "lstInv")}),
        B("data_addtolist", inputs={"ITEM": text("key")},
          fields={"LIST": ("inventory", "lstInv")}),
        B("data_setvariableto",
          inputs={"VALUE": B("data_lengthoflist",
                             fields={"LIST": ("inventory", "lstInv")})},
          fields={"VARIABLE": ("count", "varCount")}),
        B("looks_say", inputs={"MESSAGE": B(
            "data_itemoflist", inputs={"INDEX": num(1)},
            fields={"LIST": ("inventory", "lstInv")})}),
    )
    robot.loose("var", "count", "varCount")
    out["lists_data"] = project(stage(), robot)

    drum = Sprite("Drum", "dr")
    drum.script(B("event_whenkeypressed", fields={"KEY_OPTION": "space"}),
                B("sound_play", inputs={"SOUND_MENU": menu(
                    "sound_sounds_menu", "SOUND_MENU", "pop")}))
    drum.script(B("event_whenkeypressed", fields={"KEY_OPTION": "up arrow"}),
                B("motion_turnright", inputs={"DEGREES": num(15)}))
    drum.script(
        B("event_whengreaterthan", inputs={"VALUE": num(10)},
          fields={"WHENGREATERTHANMENU": "LOUDNESS"}),
        B("sensing_askandwait", inputs={"QUESTION": text("ready?")}),
        B("looks_say", inputs={"MESSAGE": B("sensing_answer")}))
    out["interactivity"] = project(stage(), drum)

    ball = Sprite("Ball", "bl")
    ball.script(
        B(FLAG),
        B("motion_gotoxy", inputs={"X": num(0), "Y": num(0)}),
        B("control_repeat_until",
          inputs={"CONDITION": B("operator_lt", inputs={
              "OPERAND1": B("motion_yposition"), "OPERAND2": text(-170)})},
          sub=[[B("motion_changeyby", inputs={"DY": num(-5)})]]),
        B("control_stop", fields={"STOP_OPTION": "all"},
          mutation={"tagName": "mutation", "children": [],
                    "hasnext": "false"}),
    )
    out["repeat_until"] = project(stage(), ball)

    cat = Sprite("Cat", "ca")
    cat.script(B(FLAG), B("motion_movesteps", inputs={"STEPS": num(10)}))
    cat.script(B("motion_turnright", inputs={"DEGREES": num(15)}),
               B("looks_nextcostume"))
    cat.script(B("operator_add", inputs={"NUM1": num(1), "NUM2": num(2)}))
    out["orphan_stack"] = project(stage(), cat)

    pen = Sprite("Pen", "pn")
    pen.script(B(FLAG), B("pen_clear"), B("pen_penDown"),
               B("motion_movesteps", inputs={"STEPS": num(10)}),
               B("music_playDrumForBeats", inputs={
                   "DRUM": menu("music_menu_DRUM", "DRUM", "1"),
                   "BEATS": num(0.25)}))
    proj = project(stage(), pen)
    proj["extensions"] = ["pen", "music"]
    out["extension_pen"] = proj

    st = stage()
    st.script(B("event_whenbackdropswitchesto",
                fields={"BACKDROP": "night"}),
              B("looks_changeeffectby", inputs={"CHANGE": num(25)},
                fields={"EFFECT": "COLOR"}))
    st.script(B("event_whenbackdropswitchesto", fields={"BACKDROP": "day"}),
              B("looks_cleargraphiceffects"))
    owl = Sprite("Owl", "ow")
    owl.script(B(FLAG), B("looks_switchbackdropto", inputs={
        "BACKDROP": menu("looks_backdrops", "BACKDROP", "night")}))
    owl.script(B("event_whenthisspriteclicked"),
               B("looks_say", inputs={"MESSAGE": text("hoot")}))
    owl.script(B("event_whenthisspriteclicked"), B("looks_nextcostume"))
    moon = Sprite("Moon", "mo")
    moon.script(B(FLAG), B("motion_glidesecstoxy", inputs={
        "SECS": num(1), "X": num(100), "Y": num(120)}))
    out["parallel_play"] = project(st, owl, moon)

    st = stage(variables={"varScore": ["score", 0]})
    cat = Sprite("Cat", "ca")
    cat.script(
        B(FLAG),
        B("motion_gotoxy", inputs={"X": num(0), "Y": num(0)}),
        B("control_forever", sub=[[
            B("control_if",
              inputs={"CONDITION": B("sensing_touchingobject", inputs={
                  "TOUCHINGOBJECTMENU": menu("sensing_touchingobjectmenu",
                                             "TOUCHINGOBJECTMENU",
                                             "Ball")})},
              sub=[[B("data_changevariableby", inputs={"VALUE": num(1)},
                      fields={"VARIABLE": ("score", "varScore")})]]),
            B("control_if_else",
              inputs={"CONDITION": B("sensing_keypressed", inputs={
                  "KEY_OPTION": menu("sensing_keyoptions", "KEY_OPTION",
                                     "space")})},
              sub=[[B("motion_movesteps", inputs={"STEPS": num(10)})],
                   [B("motion_turnright", inputs={"DEGREES": num(15)})]]),
        ]]),
    )
    out["two_conditions"] = project(st, cat)

    return out


def main():
    SRC.mkdir(parents=True, exist_ok=True)
    SB3.mkdir(parents=True, exist_ok=True)
    for name, proj in fixtures().items():
        text_doc = json.dumps(proj, indent=1, sort_keys=False) + "\n"
        (SRC / f"{name}.json").write_text(text_doc)
        # Fixed timestamps keep the archives byte-stable across runs.
        info = zipfile.ZipInfo("project.json", date_time=(2024, 1, 1, 0, 0, 0))
        info.compress_type = zipfile.ZIP_DEFLATED
        with zipfile.ZipFile(SB3 / f"{name}.sb3", "w") as zf:
            zf.writestr(info, text_doc)
            asset = zipfile.ZipInfo("cd21514d0531fdffb22204e0ec5ed84a.svg",
                                    date_time=(2024, 1, 1, 0, 0, 0))
            zf.writestr(asset, "<svg xmlns='http://www.w3.org/2000/svg'/>\n")
    # A Scratch 2 style document and an archive lacking project.json.
    (SRC / "scratch2_legacy.json").write_text(json.dumps(
        {"objName": "Stage", "children": [], "info": {"flashVersion": "x"}},
        indent=1) + "\n")
    info = zipfile.ZipInfo("readme.txt", date_time=(2024, 1, 1, 0, 0, 0))
    with zipfile.ZipFile(HERE / "no_project.zip", "w") as zf:
        zf.writestr(info, "not a scratch project\n")


if __name__ == "__main__":
    main()
