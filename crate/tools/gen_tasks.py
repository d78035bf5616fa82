#!/usr/bin/env python3
"""Regenerates crates/core/data/tasks.toml from the variation grids below."""

import itertools
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/tasks.toml"


def q(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def val(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return repr(v)
    if isinstance(v, list):
        return "[" + ", ".join(q(x) for x in v) + "]"
    return q(v)


def sel(s):
    if s in ("focused", "any", "offspring"):
        return q(s)
    kind, name = s.split(":", 1)
    return "{ " + kind + " = " + q(name) + " }"


def pred(p):
    head, *args = p
    if head in ("focus", "in_inventory", "agent_in", "state_changed", "device_active",
                "connected", "exists"):
        return "{ " + head + " = " + sel(args[0]) + " }"
    if head == "inside":
        return "{ inside = { obj = " + sel(args[0]) + ", container = " + sel(args[1]) + " } }"
    if head == "state_is":
        return "{ state_is = { obj = " + sel(args[0]) + ", phase = " + q(args[1]) + " } }"
    if head == "temp_change":
        return "{ temp_change = { obj = " + sel(args[0]) + ", delta = " + repr(float(args[1])) + " } }"
    if head == "powered":
        ren = ", renewable = true" if len(args) > 1 and args[1] else ""
        return "{ powered = { obj = " + sel(args[0]) + ren + " } }"
    if head == "stage_at_least":
        return "{ stage_at_least = { obj = " + sel(args[0]) + ", stage = " + str(args[1]) + " } }"
    if head == "did":
        return "{ did = { action = " + q(args[0]) + ", obj = " + sel(args[1]) + " } }"
    raise ValueError(head)


def goal(g):
    if isinstance(g, tuple) and isinstance(g[0], tuple):
        p, pts = g
        return "{ when = " + pred(p) + ", points = " + repr(float(pts)) + " }"
    return "{ when = " + pred(g) + " }"


TASKS = []


def task(tid, topic, name, family, description, required, optional, failure, variations):
    assert len(variations) >= 10, tid
    assert 2 <= len(optional) <= 15, tid
    unseen = sum(1 for v in variations if v.get("unseen"))
    n = len(variations)
    assert unseen <= n - (n + 1) // 2, tid
    TASKS.append((tid, topic, name, family, description, required, optional, failure, variations))


def render():
    out = [
        "# Task suite: 30 subtasks in 10 topics. Generated by tools/gen_tasks.py; edit the",
        "# script, not this file.",
        "#",
        "# Goal selectors: { slot = name } refers to objects bound by the family generator;",
        "# \"{name}\" inside kind/material/room strings is filled from variation parameters.",
        "version = 1",
        "",
    ]
    for tid, topic, name, family, desc, req, opt, fail, vars_ in TASKS:
        out.append("[[task]]")
        out.append(f"id = {q(tid)}")
        out.append(f"topic = {q(topic)}")
        out.append(f"name = {q(name)}")
        out.append(f"family = {q(family)}")
        out.append(f"description = {q(desc)}")
        out.append("required = [")
        out += ["  " + goal(g) + "," for g in req]
        out.append("]")
        out.append("optional = [")
        out += ["  " + goal(g) + "," for g in opt]
        out.append("]")
        if fail:
            out.append("failure = [")
            out += ["  " + pred(p) + "," for p in fail]
            out.append("]")
        out.append("variations = [")
        for v in vars_:
            items = []
            if v.get("unseen"):
                items.append("unseen = true")
            items += [f"{k} = {val(x)}" for k, x in v.items() if k != "unseen"]
            out.append("  { " + ", ".join(items) + " },")
        out.append("]")
        out.append("")
    OUT.write_text("\n".join(out))


# --- 1: matter ---------------------------------------------------------------

COS_REQ_FOCUS = ("focus", "slot:target")
COS_DESC = ("Your task is to {verb} {target}. First, focus on the substance. Then, take actions "
            "that will cause it to change its state of matter.")


def cos_vars(targets, spots, heaters, unseen_targets, container="metal pot"):
    vs = []
    for i, t in enumerate(targets + unseen_targets):
        room, inside = spots[i % len(spots)]
        heater, broken = heaters[i % len(heaters)]
        v = {"target": t, "container": container, "room": room, "heater": heater}
        if inside:
            v["inside"] = inside
        if broken:
            v["broken"] = broken
        if t in unseen_targets:
            v["unseen"] = True
        vs.append(v)
    return vs


HOT = [("stove", None), ("stove", None), ("oven", ["stove"])]
SPOTS = [("kitchen", "counter"), ("kitchen", "table"), ("kitchen", "fridge"), ("kitchen", "cupboard")]

task("1-1", "Matter", "Changes of State (Boiling)", "change_of_state",
     COS_DESC.replace("{verb}", "boil"),
     [COS_REQ_FOCUS, ("state_is", "slot:target", "gas")],
     [("device_active", "slot:heater"), ("inside", "slot:target", "slot:heater"),
      ("temp_change", "slot:target", 20)],
     [],
     cos_vars(["water", "orange juice", "apple juice", "milk", "chocolate milk", "soapy water",
               "sugar water", "water", "milk"],
              SPOTS, HOT, ["lemonade", "salt water", "lemonade"]))

task("1-2", "Matter", "Changes of State (Melting)", "change_of_state",
     COS_DESC.replace("{verb}", "melt"),
     [COS_REQ_FOCUS, ("state_is", "slot:target", "liquid")],
     [("device_active", "slot:heater"), ("inside", "slot:target", "slot:heater"),
      ("temp_change", "slot:target", 10)],
     [],
     cos_vars(["chocolate", "butter", "caramel", "sugar", "chocolate", "butter", "caramel",
               "sugar"],
              [("kitchen", "counter"), ("kitchen", "table"), ("kitchen", "cupboard")], HOT,
              ["marshmallow", "marshmallow", "soap"])
     + [{"target": "water", "container": "ice cube tray", "room": "kitchen", "inside": "freezer",
         "heater": "stove"},
        {"target": "lead", "container": "metal pot", "room": "foundry", "inside": "table",
         "heater": "blast furnace"},
        {"target": "tin", "container": "metal pot", "room": "foundry", "inside": "table",
         "heater": "blast furnace"},
        {"target": "zinc", "container": "metal pot", "room": "foundry", "inside": "table",
         "heater": "blast furnace", "unseen": True}])

COLD_SPOTS = [("kitchen", "counter"), ("kitchen", "table"), ("kitchen", "cupboard"),
              ("bathroom", None), ("living room", None)]
task("1-3", "Matter", "Changes of State (Freezing)", "change_of_state",
     COS_DESC.replace("{verb}", "freeze"),
     [COS_REQ_FOCUS, ("state_is", "slot:target", "solid")],
     [("inside", "slot:target", "slot:heater"), ("temp_change", "slot:target", -10)],
     [],
     cos_vars(["water", "orange juice", "apple juice", "milk", "chocolate milk", "soapy water",
               "sugar water", "water", "orange juice"],
              COLD_SPOTS, [("freezer", None)], ["lemonade", "lemonade", "apple juice"],
              container="glass cup")
     [:9] + [{"target": t, "container": "glass cup", "room": r, "heater": "freezer", "unseen": True}
             for t, r in [("lemonade", "kitchen"), ("lemonade", "bathroom"),
                          ("lemonade", "living room")]])

task("1-4", "Matter", "Changes of State (Any)", "change_of_state",
     "Your task is to change the state of matter of {target}. First, focus on the substance. "
     "Then, take actions that will cause it to change its state of matter.",
     [COS_REQ_FOCUS, ("state_changed", "slot:target")],
     [("inside", "slot:target", "slot:heater"), ("did", "pick up", "slot:container"),
      ("did", "move", "slot:container")],
     [],
     [{"target": "water", "container": "metal pot", "room": "kitchen", "inside": "counter", "heater": "stove"},
      {"target": "water", "container": "glass cup", "room": "kitchen", "inside": "table", "heater": "freezer"},
      {"target": "water", "container": "ice cube tray", "room": "kitchen", "inside": "freezer", "heater": "stove"},
      {"target": "chocolate", "container": "metal pot", "room": "kitchen", "inside": "table", "heater": "stove"},
      {"target": "butter", "container": "bowl", "room": "kitchen", "inside": "fridge", "heater": "oven"},
      {"target": "milk", "container": "glass cup", "room": "kitchen", "inside": "fridge", "heater": "freezer"},
      {"target": "orange juice", "container": "glass cup", "room": "living room", "heater": "freezer"},
      {"target": "apple juice", "container": "metal pot", "room": "kitchen", "inside": "counter", "heater": "stove"},
      {"target": "caramel", "container": "metal pot", "room": "kitchen", "inside": "cupboard", "heater": "stove"},
      {"target": "soapy water", "container": "glass cup", "room": "bathroom", "heater": "freezer"},
      {"target": "marshmallow", "container": "bowl", "room": "kitchen", "inside": "table", "heater": "oven", "unseen": True},
      {"target": "lemonade", "container": "glass cup", "room": "kitchen", "inside": "counter", "heater": "freezer", "unseen": True},
      {"target": "marshmallow", "container": "metal pot", "room": "kitchen", "inside": "counter", "heater": "stove", "unseen": True}])

# --- 2: measurement -------------------------------------------------------------

BOX_PAIRS = [["red box", "green box"], ["blue box", "orange box"], ["yellow box", "purple box"]]

# (target, room, inside, threshold) with thresholds clear of start and ambient
THERMO = [
    ("apple", "kitchen", "fridge", 30), ("banana", "kitchen", "table", 10),
    ("bread", "kitchen", "counter", 40), ("cookie", "kitchen", "freezer", -30),
    ("metal fork", "kitchen", "freezer", 35), ("iron nail", "workshop", "table", 5),
    ("apple", "kitchen", "table", 45), ("banana", "kitchen", "fridge", -10),
    ("bread", "kitchen", "freezer", 30), ("cookie", "kitchen", "table", 0),
    ("steel spoon", "kitchen", "fridge", 35), ("steel spoon", "kitchen", "counter", -5),
    ("copper coin", "kitchen", "freezer", -40), ("copper coin", "living room", None, 50),
]
task("2-1", "Measurement", "Use Thermometer", "thermometer",
     "Your task is to measure the temperature of the {target}, which is located around the "
     "{room}. First, focus on the thermometer. Next, focus on the {target}. If the {target} "
     "temperature is above {threshold} degrees celsius, place it in the {box_a}. If the "
     "{target} temperature is below {threshold} degrees celsius, place it in the {box_b}. The "
     "boxes are located around the {room}.",
     [("focus", "slot:thermometer"), ("focus", "slot:target"),
      ("inside", "slot:target", "slot:answer")],
     [("in_inventory", "slot:thermometer"), ("did", "use", "slot:target")],
     [("inside", "slot:target", "slot:wrong")],
     [dict({"target": t, "room": r, "threshold": th, "boxes": BOX_PAIRS[i % 3]},
           **({"inside": ins} if ins else {}), **({"unseen": True} if t == "copper coin" else {}))
      for i, (t, r, ins, th) in enumerate(THERMO)])

MP_DESC = ("Your task is to measure the melting point of {target}, which is located around the "
           "{room}. First, focus on the thermometer. Next, focus on the {target}. If the melting "
           "point of {target} is above {threshold} degrees celsius, focus on the {box_a}. If the "
           "melting point of {target} is below {threshold} degrees celsius, focus on the {box_b}. "
           "The boxes are located around the kitchen.")
MP_REQ = [("focus", "slot:thermometer"), ("focus", "slot:target"), ("focus", "slot:answer")]
MP_OPT = [("device_active", "slot:heater"), ("inside", "slot:target", "slot:heater"),
          ("did", "use", "slot:target")]
MP = [("chocolate", 80), ("butter", 70), ("marshmallow", 10), ("marshmallow", 100),
      ("soap", 20), ("soap", 110), ("caramel", 120), ("caramel", 200), ("sugar", 130),
      ("chocolate", -10), ("butter", -5), ("sugar", 230)]
task("2-2", "Measurement", "Measuring Melting Point (known substances)", "melting_point",
     MP_DESC, MP_REQ, MP_OPT, [],
     [{"target": t, "threshold": th, "room": "kitchen", "inside": ["counter", "table"][i % 2],
       "container": "metal pot", "heater": "stove", "boxes": BOX_PAIRS[i % 3],
       **({"unseen": True} if t == "sugar" else {})}
      for i, (t, th) in enumerate(MP)]
     + [{"target": "water", "threshold": 40, "room": "kitchen", "inside": "freezer",
         "container": "metal pot", "heater": "stove", "boxes": ["red box", "green box"]}])

task("2-3", "Measurement", "Measuring Melting Point (unknown substances)", "melting_point",
     MP_DESC, MP_REQ, MP_OPT, [],
     [{"label": chr(ord("A") + i), "room": "kitchen", "inside": ["counter", "table"][i % 2],
       "container": "metal pot", "heater": "stove", "boxes": BOX_PAIRS[i % 3]}
      for i in range(14)])

# --- 3: electricity -----------------------------------------------------------

WIRES = [["red wire", "blue wire"], ["black wire", "orange wire"], ["red wire", "blue wire", "black wire"],
         ["green wire", "yellow wire"]]
task("3-1", "Electricity", "Create a circuit", "circuit",
     "Your task is to turn on the {target}. First, focus on the {target}. Then, create an "
     "electrical circuit that powers it on.",
     [("focus", "slot:target"), ("powered", "slot:target")],
     [("connected", "slot:target"), ("connected", "slot:source"), ("did", "connect", "slot:wires")],
     [],
     [{"target": t, "room": "workshop", "wires": WIRES[i % 4],
       **({"extra": e} if e else {}), **({"unseen": True} if t == "buzzer" else {})}
      for i, (t, e) in enumerate([("light bulb", None), ("motor", None), ("light bulb", "switch"),
                                  ("motor", "switch"), ("light bulb", "motor"), ("motor", "light bulb"),
                                  ("light bulb", None), ("motor", None), ("buzzer", None),
                                  ("buzzer", "switch"), ("buzzer", "motor")])])

task("3-2", "Electricity", "Renewable vs Non-renewable Energy", "renewable",
     "Your task is to turn on the {target} by powering it with a renewable power source. "
     "First, focus on the {target}. Then, create an electrical circuit that powers it on "
     "using a renewable source of energy.",
     [("focus", "slot:target"), ("powered", "slot:target", True)],
     [("device_active", "slot:source"), ("connected", "slot:target"), ("connected", "slot:source")],
     [],
     [{"target": t, "source": s, "room": "workshop", "wires": WIRES[i % 4],
       **({"unseen": True} if t == "buzzer" else {})}
      for i, (t, s) in enumerate(itertools.product(["light bulb", "motor", "buzzer"],
                                                   ["solar panel", "wind generator"]))]
     + [{"target": t, "source": s, "room": "workshop", "wires": WIRES[(i + 2) % 4]}
        for i, (t, s) in enumerate([("light bulb", "solar panel"), ("motor", "wind generator"),
                                    ("light bulb", "wind generator"), ("motor", "solar panel")])])

COND_DESC = ("Your task is to determine if {target} is electrically conductive. The {target} is "
             "located around the {room}. First, focus on the {target}. If it is electrically "
             "conductive, place it in the {box_a}. If it is electrically nonconductive, place it in "
             "the {box_b}.")
COND_REQ = [("focus", "slot:target"), ("inside", "slot:target", "slot:answer")]
COND_OPT = [("connected", "slot:target"), ("powered", "slot:bulb"), ("in_inventory", "slot:target")]
COND = [("metal fork", "kitchen", "table"), ("plastic fork", "kitchen", "counter"),
        ("wooden spoon", "kitchen", "table"), ("steel spoon", "kitchen", "cupboard"),
        ("iron nail", "workshop", None), ("paper clip", "living room", "desk"),
        ("rubber band", "workshop", None), ("ceramic plate", "kitchen", "cupboard"),
        ("aluminum foil", "kitchen", "counter"), ("cotton ball", "bathroom", None),
        ("glass marble", "bedroom", None), ("graphite rod", "workshop", None),
        ("copper coin", "living room", None)]
task("3-3", "Electricity", "Test Conductivity (known substances)", "conductivity",
     COND_DESC, COND_REQ, COND_OPT, [("inside", "slot:target", "slot:wrong")],
     [{"target": t, "room": r, "boxes": BOX_PAIRS[i % 3], **({"inside": ins} if ins else {}),
       **({"unseen": True} if t in ("glass marble", "graphite rod", "copper coin") else {})}
      for i, (t, r, ins) in enumerate(COND)])

task("3-4", "Electricity", "Test Conductivity (unknown substances)", "conductivity",
     COND_DESC, COND_REQ, COND_OPT, [("inside", "slot:target", "slot:wrong")],
     [{"label": chr(ord("A") + i), "room": ["workshop", "kitchen", "living room"][i % 3],
       "boxes": BOX_PAIRS[i % 3]}
      for i in range(14)])

# --- 4: classification ----------------------------------------------------------

PLANTS = [["apple tree", "orange tree"], ["peach tree"], ["lemon tree", "cherry tree"],
          ["strawberry plant"], ["avocado tree", "sunflower"]]
ANIMALS = [["rabbit", "frog"], ["dog"], ["hedgehog", "beaver"], ["turtle"], ["parrot", "mouse"]]
BOXES4 = [("kitchen", "red box"), ("bathroom", "blue box"), ("bedroom", "green box"),
          ("living room", "orange box"), ("workshop", "yellow box"), ("hallway", "purple box"),
          ("art studio", "red box"), ("greenhouse", "blue box"), ("foundry", "green box"),
          ("outside", "orange box"), ("kitchen", "purple box"), ("bedroom", "yellow box")]


def classify(tid, name, what, cat):
    task(tid, "Classification", name, "classify",
         "Your task is to find a(n) " + what + ". First, focus on the thing. Then, move it to "
         "the {box} in the {box_room}.",
         [(("focus", "category:" + cat), 6), (("inside", "focused", "slot:box"), 2)],
         [("in_inventory", "focused"), ("agent_in", "room:{box_room}")],
         [],
         [{"box_room": r, "box": b, "plants": PLANTS[i % 5], "animals": ANIMALS[(i * 2) % 5],
           **({"unseen": True} if i >= 10 else {})}
          for i, (r, b) in enumerate(BOXES4)])


classify("4-1", "Find a living thing", "living thing", "living")
classify("4-2", "Find a non-living thing", "non-living thing", "nonliving")
classify("4-3", "Find a plant", "plant", "plant")
classify("4-4", "Find an animal", "animal", "animal")

# --- 5: biology: growing ------------------------------------------------------

GROW = [("apple tree", "pot", ["orange tree"]), ("orange tree", "room", []),
        ("peach tree", "shovel", ["lemon tree"]), ("lemon tree", "pot", []),
        ("cherry tree", "room", ["apple tree", "peach tree"]), ("strawberry plant", "shovel", []),
        ("sunflower", "pot", ["cherry tree"]), ("pea plant", "room", ["sunflower"]),
        ("apple tree", "shovel", []), ("orange tree", "pot", ["pea plant"]),
        ("avocado tree", "pot", []), ("avocado tree", "room", ["apple tree"])]
task("5-1", "Biology", "Grow a plant", "grow_plant",
     "Your task is to grow a {species}. This will require planting the {seed} in soil and "
     "watering it. First, focus on the {seed}. Then, make changes to the environment that grow "
     "the plant until it reaches the reproducing life stage.",
     [("focus", "slot:seed"), ("stage_at_least", "slot:seed", 3)],
     [("inside", "slot:seed", "slot:pots"), ("stage_at_least", "slot:seed", 1),
      ("stage_at_least", "slot:seed", 2)],
     [],
     [{"species": s, "soil": so, "distractors": d, **({"unseen": True} if s == "avocado tree" else {})}
      for s, so, d in GROW])

FRUIT = ["apple tree", "orange tree", "peach tree", "lemon tree", "cherry tree",
         "strawberry plant", "pea plant", "sunflower", "apple tree", "peach tree",
         "avocado tree", "avocado tree"]
task("5-2", "Biology", "Grow a fruit", "grow_fruit",
     "Your task is to grow a(n) {fruit}. This will require growing several plants, and them "
     "being crosspollinated to produce fruit. Seeds can be found in the greenhouse. To complete "
     "the task, focus on the grown {fruit}.",
     [("exists", "kind:fruit"), ("focus", "kind:fruit")],
     [("inside", "slot:seeds", "slot:pots"), ("stage_at_least", "slot:seeds", 2),
      ("stage_at_least", "slot:seeds", 3)],
     [],
     [{"species": s, **({"unseen": True} if s == "avocado tree" else {})} for s in FRUIT])

# --- 6: chemistry -------------------------------------------------------------

OUTPUTS = ["salt water", "sugar water", "soapy water", "chocolate milk", "mixed nuts", "rust", "dough"]
task("6-1", "Chemistry", "Mixing (generic)", "chemistry",
     "Your task is to use chemistry to create {output}. A recipe can be found in the {room}. "
     "When you are done, focus on the {output}.",
     [("exists", "material:{output}"), ("focus", "material:{output}")],
     [("did", "read", "slot:recipe"), ("did", "mix", "any")],
     [],
     [{"output": o, "room": r, **({"unseen": True} if o in ("rust", "dough") else {})}
      for o in OUTPUTS for r in ("kitchen", "workshop")])

SECONDARY = {"orange paint": ["red paint", "yellow paint"], "green paint": ["blue paint", "yellow paint"],
             "violet paint": ["red paint", "blue paint"]}
PRIMARY = ["red paint", "blue paint", "yellow paint"]
v62 = []
for i, (t, parts) in enumerate(SECONDARY.items()):
    other = [p for p in PRIMARY if p not in parts][0]
    for j, paints in enumerate([parts, parts[::-1], parts + [other], [other] + parts[::-1]]):
        v = {"target": t, "room": "art studio", "paints": paints}
        if t == "violet paint":
            v["unseen"] = True
        v62.append(v)
task("6-2", "Chemistry", "Mixing paints (secondary colours)", "paint",
     "Your task is to use chemistry to create {target}. When you are done, focus on the {target}.",
     [("exists", "material:{target}"), ("focus", "material:{target}")],
     [("did", "pour", "slot:paint_things"), ("did", "mix", "slot:paint_things")],
     [],
     v62)

TERTIARY = {
    "red-orange paint": (["red paint", "red paint", "yellow paint"], "orange paint"),
    "yellow-orange paint": (["yellow paint", "yellow paint", "red paint"], "orange paint"),
    "yellow-green paint": (["yellow paint", "yellow paint", "blue paint"], "green paint"),
    "blue-green paint": (["blue paint", "blue paint", "yellow paint"], "green paint"),
    "blue-violet paint": (["blue paint", "blue paint", "red paint"], "violet paint"),
    "red-violet paint": (["red paint", "red paint", "blue paint"], "violet paint"),
}
v63 = []
for t, (paints, mid) in TERTIARY.items():
    for order in (paints, paints[::-1]):
        v = {"target": t, "intermediate": mid, "room": "art studio", "paints": order}
        if "violet" in t:
            v["unseen"] = True
        v63.append(v)
task("6-3", "Chemistry", "Mixing paints (tertiary colours)", "paint",
     "Your task is to use chemistry to create {target}. When you are done, focus on the {target}.",
     [("exists", "material:{target}"), ("focus", "material:{target}")],
     [("exists", "material:{intermediate}"), ("did", "pour", "slot:paint_things"),
      ("did", "mix", "slot:paint_things")],
     [],
     v63)

# --- 7: lifespans -------------------------------------------------------------

TRIOS = [["rabbit", "frog", "dog"], ["mouse", "turtle", "beaver"], ["hedgehog", "elephant", "rabbit"],
         ["dog", "parrot", "mouse"], ["frog", "beaver", "crocodile"], ["hedgehog", "dog", "elephant"],
         ["mouse", "parrot", "frog"], ["rabbit", "crocodile", "hedgehog"], ["beaver", "elephant", "mouse"],
         ["chameleon", "giant tortoise", "mouse"], ["dog", "giant tortoise", "chameleon"],
         ["chameleon", "frog", "giant tortoise"]]


def lifespan(tid, name, desc, req):
    task(tid, "Biology", name, "lifespan", desc, req,
         [("did", "look at", "slot:animals"), ("in_inventory", "slot:animals")],
         [],
         [{"animals": t, **({"unseen": True} if "giant tortoise" in t else {})} for t in TRIOS])


lifespan("7-1", "Identify longest-lived animal",
         "Your task is to find the animal with the longest life span. The animals are in the "
         "'outside' location. Focus on the animal with the longest life span.",
         [("focus", "slot:longest")])
lifespan("7-2", "Identify shortest-lived animal",
         "Your task is to find the animal with the shortest life span. The animals are in the "
         "'outside' location. Focus on the animal with the shortest life span.",
         [("focus", "slot:shortest")])
lifespan("7-3", "Identify longest-then-shortest-lived animal",
         "Your task is to find the animal with the longest life span, then the shortest life "
         "span. First, focus on the animal with the longest life span. Then, focus on the animal "
         "with the shortest life span. The animals are in the 'outside' location.",
         [("focus", "slot:longest"), ("focus", "slot:shortest")])

# --- 8: life stages ------------------------------------------------------------

STAGE_REQ = [("focus", f"slot:stage{i}") for i in range(1, 5)]
STAGE_OPT = [("did", "look at", "slot:stages"), ("in_inventory", "slot:stages")]
task("8-1", "Biology", "Identify life stages (plant)", "life_stages",
     "Your task is to focus on the life stages of the {species}, starting from earliest to "
     "latest. The plants are located in the {room}.",
     STAGE_REQ, STAGE_OPT, [],
     [{"species": s, "room": r, **({"unseen": True} if s in ("avocado tree", "sunflower") else {})}
      for s, r in [("apple tree", "outside"), ("orange tree", "greenhouse"), ("peach tree", "outside"),
                   ("lemon tree", "greenhouse"), ("cherry tree", "outside"), ("pea plant", "greenhouse"),
                   ("strawberry plant", "outside"), ("apple tree", "greenhouse"),
                   ("avocado tree", "outside"), ("sunflower", "greenhouse"), ("sunflower", "outside")]])

task("8-2", "Biology", "Identify life stages (animal)", "life_stages",
     "Your task is to focus on the life stages of the {species}, starting from earliest to "
     "latest. The animals are located in the {room}.",
     STAGE_REQ, STAGE_OPT, [],
     [{"species": s, "room": "outside", **({"unseen": True} if s in ("giant tortoise", "crocodile") else {})}
      for s in ["frog", "butterfly", "moth", "bee", "dragonfly", "mouse", "rabbit", "dog",
                "chameleon", "turtle", "crocodile", "giant tortoise"]])

# --- 9: forces -------------------------------------------------------------------

PLANE_OPT = [("inside", "slot:block", "slot:planes"), ("did", "look at", "slot:planes")]
ANGLES = [(["45", "20"], "wood"), (["15", "60"], "wood"), (["30", "70"], "steel"), (["80", "35"], "glass"),
          (["25", "50"], "plastic"), (["65", "30"], "paper"), (["40", "75"], "steel"),
          (["20", "55"], "glass"), (["70", "25"], "cardboard"), (["35", "85"], "aluminum"),
          (["60", "20"], "marble"), (["30", "65"], "marble")]
task("9-1", "Forces", "Inclined Planes (determine angle)", "planes",
     "Your task is to determine which of the two inclined planes (A, B) has the {ask} angle. "
     "After completing your experiment, focus on the inclined plane with the {ask} angle.",
     [("focus", "slot:answer")], PLANE_OPT, [],
     [{"mode": "angle", "room": "workshop", "angles": a, "surface": s,
       "ask": ["steepest", "shallowest"][i % 2], "answer": ["fast", "slow"][i % 2],
       **({"unseen": True} if s == "marble" else {})}
      for i, (a, s) in enumerate(ANGLES)])

PAIRS = [["steel", "wood"], ["carpet", "glass"], ["rubber", "plastic"], ["paper", "steel"],
         ["glass", "cotton"], ["sandpaper", "aluminum"], ["wood", "carpet"], ["iron", "rubber"],
         ["cotton", "steel"], ["plastic", "sandpaper"], ["marble", "carpet"], ["rubber", "marble"]]
task("9-2", "Forces", "Friction (known surfaces)", "planes",
     "Your task is to determine which of the two inclined planes (A, B) has the {ask} friction. "
     "After completing your experiment, focus on the inclined plane with the {ask} friction.",
     [("focus", "slot:answer")], PLANE_OPT, [],
     [{"mode": "friction", "room": "workshop", "surfaces": p, "angle": 45,
       "ask": ["most", "least"][i % 2], "answer": ["slow", "fast"][i % 2],
       **({"unseen": True} if "marble" in p else {})}
      for i, p in enumerate(PAIRS)])

task("9-3", "Forces", "Friction (unknown surfaces)", "planes",
     "Your task is to determine which of the two inclined planes (A, B) has the {ask} friction. "
     "After completing your experiment, focus on the inclined plane with the {ask} friction.",
     [("focus", "slot:answer")], PLANE_OPT, [],
     [{"mode": "masked", "room": "workshop", "labels": [chr(65 + 2 * i), chr(66 + 2 * i)], "angle": 45,
       "ask": ["most", "least"][i % 2], "answer": ["slow", "fast"][i % 2]}
      for i in range(12)])

# --- 10: genetics -----------------------------------------------------------------

GEN_DESC = ("Your task is to determine whether {value} {trait} is a dominant or recessive trait "
            "in the {species}. If the trait is dominant, focus on the {box_a}. If the trait is "
            "recessive, focus on the {box_b}. Seeds and flower pots can be found in the "
            "greenhouse.")
GEN_REQ = [("focus", "slot:answer")]
GEN_OPT = [("stage_at_least", "slot:parents", 3), ("exists", "kind:fruit"),
           ("stage_at_least", "offspring", 2)]
PEA = [("flower color", "purple", "white"), ("seed shape", "round", "wrinkled"),
       ("seed color", "yellow", "green"), ("pod color", "green", "yellow"),
       ("plant height", "tall", "short")]
v101 = []
for i, (t, d, r) in enumerate(PEA + PEA[:2]):
    for value in (d, r):
        v = {"trait": t, "value": value, "boxes": BOX_PAIRS[len(v101) % 3]}
        if t == "plant height":
            v["unseen"] = True
        v101.append(v)
v101 = v101[:12]
task("10-1", "Biology", "Mendelian Genetics (known plants)", "genetics",
     GEN_DESC, GEN_REQ, GEN_OPT, [], v101)

task("10-2", "Biology", "Mendelian Genetics (unknown plants)", "genetics",
     GEN_DESC, GEN_REQ, GEN_OPT, [],
     [{"label": chr(65 + i), "trait": PEA[i % 5][0], "value": PEA[i % 5][1],
       "boxes": BOX_PAIRS[i % 3]} for i in range(12)])

assert len(TASKS) == 30, len(TASKS)
render()
