"""Curriculum generation and the curriculum file format.

A curriculum is an ordered list of (scene, utterance) instances. The
built-in generator composes phases in a fixed order (objects, colors,
actions, plurals, category generics, action generics, color generics)
over a configurable object inventory, shuffling within each phase from a
seed. Membership generics are emitted with already-introduced subjects
first so that every generated curriculum is learnable in order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from pathlib import Path

from .lang import (
    MASS_NOUN,
    NOUN,
    PROPER_NOUN,
    Lexicon,
    ParseError,
    default_lexicon,
    parse,
    tokenize,
)
from .learner import ActionFrame, Entity, LearningInstance, Situation

PHASES = (
    "objects",
    "colors",
    "actions",
    "plurals",
    "category-generics",
    "action-generics",
    "color-generics",
)


class CurriculumFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


DEFAULT_OBJECTS = (
    "ball", "box", "book", "table", "chair", "cup", "truck", "car", "house",
    "cookie", "paper", "watermelon", "chicken", "beef", "cow", "bear", "bird",
    "cat", "dog", "baby", "mom", "dad", "hand", "head", "water", "juice", "milk",
)

DEFAULT_CATEGORIES: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("animal", ("bear", "bird", "cat", "dog", "cow", "chicken")),
    ("food", ("cookie", "watermelon", "chicken", "beef", "milk", "juice", "water")),
    ("people", ("mom", "dad", "baby")),
)

# Per-pair exposure counts. The three objects below keep the counts that
# produce the 0.2 / 0.36 / 0.488 strength tiers; every other count noun is
# assigned three single-exposure colors from the rotation.
DEFAULT_COLOR_TABLE: tuple[tuple[str, tuple[tuple[str, int], ...]], ...] = (
    ("cookie", (("blue", 1), ("green", 3), ("light-brown", 1), ("red", 1))),
    ("paper", (("blue", 1), ("dark-brown", 2), ("red", 1), ("white", 1))),
    ("watermelon", (("dark-brown", 1), ("green", 1), ("light-brown", 1), ("red", 1))),
)
_COLOR_ROTATION = ("red", "blue", "green", "yellow", "white", "black")

# (subject, verb, object-or-None, repetitions); people handle the transitive
# frames, animals the intransitive ones, and only food gets eaten.
DEFAULT_ACTIONS: tuple[tuple[str, str, str | None, int], ...] = (
    ("mom", "drink", "juice", 1),
    ("dad", "drink", "water", 1),
    ("baby", "drink", "milk", 1),
    ("mom", "eat", "cookie", 1),
    ("dad", "eat", "watermelon", 1),
    ("baby", "eat", "cookie", 1),
    ("mom", "roll", "ball", 1),
    ("dad", "roll", "truck", 1),
    ("baby", "roll", "ball", 1),
    ("mom", "take", "cup", 1),
    ("dad", "take", "book", 1),
    ("baby", "take", "box", 1),
    ("dog", "sit", None, 1),
    ("cat", "sit", None, 1),
    ("bear", "sit", None, 1),
    ("bird", "fly", None, 1),
    ("cow", "walk", None, 1),
    ("chicken", "walk", None, 1),
)

DEFAULT_ACTION_GENERICS: tuple[tuple[str, str], ...] = (
    ("bear", "sit"),
    ("bird", "fly"),
    ("cat", "walk"),
    ("dog", "walk"),
    ("baby", "sit"),
    ("mom", "eat"),
    ("dad", "eat"),
)

DEFAULT_COLOR_GENERICS: tuple[tuple[str, str], ...] = (
    ("watermelon", "green"),
    ("paper", "white"),
    ("cookie", "light-brown"),
)

_VERB_3SG = {"sit": "sits", "walk": "walks", "fly": "flies", "jump": "jumps",
             "eat": "eats", "drink": "drinks", "roll": "rolls", "take": "takes"}


@dataclass
class CurriculumSpec:
    """What to generate: phases, inventory tweaks, tables, shuffle seed."""

    phases: tuple[str, ...]
    name: str = ""
    objects: tuple[str, ...] | None = None  # full inventory replacement
    include_objects: tuple[str, ...] = ()
    exclude_objects: tuple[str, ...] = ()
    categories: tuple[tuple[str, tuple[str, ...]], ...] = DEFAULT_CATEGORIES
    color_table: tuple[tuple[str, tuple[tuple[str, int], ...]], ...] | None = None
    actions: tuple[tuple[str, str, str | None, int], ...] = DEFAULT_ACTIONS
    action_generics: tuple[tuple[str, str], ...] = DEFAULT_ACTION_GENERICS
    color_generics: tuple[tuple[str, str], ...] = DEFAULT_COLOR_GENERICS
    seed: int = 0


@dataclass(frozen=True)
class Curriculum:
    name: str
    instances: tuple[LearningInstance, ...]


def _indefinite(lemma: str) -> str:
    return f"a {lemma.replace('-', ' ')}"


def _entity(i: int, lemma: str, color: str | None = None) -> Entity:
    return Entity(f"e{i}", lemma, color)


class _Generator:
    def __init__(self, spec: CurriculumSpec, lexicon: Lexicon):
        self.spec = spec
        self.lex = lexicon
        self.rng = random.Random(spec.seed)
        self.inventory = self._inventory()
        self.common = [o for o in self.inventory if self.lex.pos_of(o) != PROPER_NOUN]
        self.count_nouns = [o for o in self.inventory if self.lex.pos_of(o) == NOUN]

    def _inventory(self) -> list[str]:
        base = list(self.spec.objects if self.spec.objects is not None else DEFAULT_OBJECTS)
        for extra in self.spec.include_objects:
            if extra not in base:
                base.append(extra)
        out = [o for o in base if o not in set(self.spec.exclude_objects)]
        for lemma in out:
            pos = self.lex.pos_of(lemma)
            if pos not in (NOUN, MASS_NOUN, PROPER_NOUN):
                raise ValueError(f"inventory lexeme {lemma!r} is not a noun in the lexicon")
        return out

    def plural(self, lemma: str) -> str:
        surface = self.lex.plural_surface(lemma)
        if self.lex.pos_of(lemma) == PROPER_NOUN:
            return surface.capitalize()
        return surface

    def subject_text(self, lemma: str) -> str:
        if self.lex.pos_of(lemma) == PROPER_NOUN:
            return self.lex.display(lemma)
        return _indefinite(lemma)

    def object_text(self, lemma: str) -> str:
        if self.lex.pos_of(lemma) == MASS_NOUN:
            return lemma
        return _indefinite(lemma)

    # -- phases ---------------------------------------------------------

    def objects_phase(self) -> list[LearningInstance]:
        out = []
        for lemma in self.common:
            out.append(LearningInstance(
                Situation(entities=(_entity(0, lemma),)),
                _indefinite(lemma)))
        return out

    def color_table(self) -> list[tuple[str, str, int]]:
        table = self.spec.color_table
        if table is not None:
            rows = [(obj, color, n) for obj, pairs in table for color, n in pairs]
        else:
            rows = [(obj, color, n) for obj, pairs in DEFAULT_COLOR_TABLE
                    for color, n in pairs]
            fixed = {obj for obj, _ in DEFAULT_COLOR_TABLE}
            rest = [o for o in self.count_nouns if o not in fixed]
            for i, obj in enumerate(rest):
                for step in (0, 2, 4):
                    rows.append((obj, _COLOR_ROTATION[(i + step) % len(_COLOR_ROTATION)], 1))
        return [(obj, color, n) for obj, color, n in rows if obj in set(self.inventory)]

    def colors_phase(self) -> list[LearningInstance]:
        out = []
        for obj, color, n in self.color_table():
            for _ in range(n):
                out.append(LearningInstance(
                    Situation(entities=(_entity(0, obj, color),)),
                    f"a {color.replace('-', ' ')} {obj}"))
        return out

    def actions_phase(self) -> list[LearningInstance]:
        inv = set(self.inventory)
        out = []
        for subject, verb, obj, n in self.spec.actions:
            if subject not in inv or (obj is not None and obj not in inv):
                continue
            entities = [_entity(0, subject)]
            frame = ActionFrame(verb, "e0")
            text = f"{self.subject_text(subject)} {_VERB_3SG[verb]}"
            if obj is not None:
                entities.append(_entity(1, obj))
                frame = ActionFrame(verb, "e0", "e1")
                text += f" {self.object_text(obj)}"
            for _ in range(n):
                out.append(LearningInstance(
                    Situation(entities=tuple(entities), actions=(frame,)), text))
        return out

    def plurals_phase(self) -> list[LearningInstance]:
        out = []
        for i, lemma in enumerate(self.count_nouns):
            word, count = ("two", 2) if i % 2 == 0 else ("many", 3)
            entities = tuple(_entity(j, lemma) for j in range(count))
            out.append(LearningInstance(
                Situation(entities=entities), f"{word} {self.plural(lemma)}"))
        return out

    def category_generics_phase(self) -> list[LearningInstance]:
        inv = set(self.inventory)
        introduced = set(self.common) if "objects" in self.spec.phases else set()
        out = []
        for category, members in self.spec.categories:
            present = [m for m in members if m in inv]
            known = [m for m in present if m in introduced]
            unknown = [m for m in present if m not in introduced]
            self.rng.shuffle(known)
            self.rng.shuffle(unknown)
            for member in known + unknown:
                out.append(LearningInstance(
                    Situation(entities=(_entity(0, member),)),
                    f"{self.plural(member)} are {self.plural(category)}"))
        return out

    def action_generics_phase(self) -> list[LearningInstance]:
        inv = set(self.inventory)
        out = []
        for subject, verb in self.spec.action_generics:
            if subject not in inv:
                continue
            out.append(LearningInstance(
                Situation(entities=(_entity(0, subject),),
                          actions=(ActionFrame(verb, "e0"),)),
                f"{self.plural(subject)} {verb}"))
        return out

    def color_generics_phase(self) -> list[LearningInstance]:
        inv = set(self.inventory)
        out = []
        for obj, color in self.spec.color_generics:
            if obj not in inv:
                continue
            out.append(LearningInstance(
                Situation(entities=(_entity(0, obj, color),)),
                f"{self.plural(obj)} are {color.replace('-', ' ')}"))
        return out

    def run(self) -> Curriculum:
        builders = {
            "objects": self.objects_phase,
            "colors": self.colors_phase,
            "actions": self.actions_phase,
            "plurals": self.plurals_phase,
            "category-generics": self.category_generics_phase,
            "action-generics": self.action_generics_phase,
            "color-generics": self.color_generics_phase,
        }
        for phase in self.spec.phases:
            if phase not in PHASES:
                raise ValueError(f"unknown curriculum phase {phase!r}")
        instances: list[LearningInstance] = []
        for phase in PHASES:
            if phase not in self.spec.phases:
                continue
            block = builders[phase]()
            if phase != "category-generics":
                self.rng.shuffle(block)
            instances.extend(block)
        name = self.spec.name or "+".join(p for p in PHASES if p in self.spec.phases)
        return Curriculum(name, tuple(instances))


def generate(spec: CurriculumSpec, lexicon: Lexicon | None = None) -> Curriculum:
    """Deterministically expand a spec; same spec and seed, same curriculum."""
    return _Generator(spec, lexicon or default_lexicon()).run()


BUILTIN_PHASES: dict[str, tuple[str, ...]] = {
    "objects-and-kinds": ("objects", "category-generics"),
    "objects-kinds-and-generics": ("objects", "category-generics", "action-generics"),
    "obj-actions-kinds-generics": PHASES,
    "objects-and-actions": ("objects", "actions"),
    "objects-and-colors": ("objects", "colors"),
}


def builtin_spec(name: str, seed: int = 0, **overrides) -> CurriculumSpec:
    if name not in BUILTIN_PHASES:
        known = ", ".join(sorted(BUILTIN_PHASES))
        raise ValueError(f"unknown builtin curriculum {name!r} (known: {known})")
    spec = CurriculumSpec(phases=BUILTIN_PHASES[name], name=name, seed=seed)
    return replace(spec, **overrides) if overrides else spec


def builtin_curriculum(name: str, seed: int = 0, **overrides) -> Curriculum:
    return generate(builtin_spec(name, seed, **overrides))


# -- file format ----------------------------------------------------------

def curriculum_to_text(curriculum: Curriculum) -> str:
    lines = [f"# name: {curriculum.name}", ""]
    for instance in curriculum.instances:
        lines.append("instance")
        items = []
        for e in instance.situation.entities:
            item = f"entity {e.id} {e.lemma}"
            if e.color is not None:
                item += f" color={e.color}"
            items.append(item)
        for a in instance.situation.actions:
            item = f"action {a.verb} agent={a.agent}"
            if a.patient is not None:
                item += f" patient={a.patient}"
            items.append(item)
        lines.append("  scene: " + " ; ".join(items))
        lines.append(f"  say: {instance.utterance}")
        lines.append("")
    return "\n".join(lines)


def _parse_scene(text: str, lineno: int) -> Situation:
    entities: list[Entity] = []
    actions: list[ActionFrame] = []
    for item in filter(None, (part.strip() for part in text.split(";"))):
        fields = item.split()
        if fields[0] == "entity":
            if len(fields) not in (3, 4):
                raise CurriculumFormatError(f"bad entity declaration {item!r}", lineno)
            color = None
            if len(fields) == 4:
                key, sep, value = fields[3].partition("=")
                if key != "color" or not sep:
                    raise CurriculumFormatError(f"bad entity attribute {fields[3]!r}", lineno)
                color = value
            entities.append(Entity(fields[1], fields[2], color))
        elif fields[0] == "action":
            if len(fields) not in (3, 4):
                raise CurriculumFormatError(f"bad action declaration {item!r}", lineno)
            agent = None
            patient = None
            for extra in fields[2:]:
                key, sep, value = extra.partition("=")
                if key == "agent" and sep:
                    agent = value
                elif key == "patient" and sep:
                    patient = value
                else:
                    raise CurriculumFormatError(f"bad action attribute {extra!r}", lineno)
            if agent is None:
                raise CurriculumFormatError("action needs an agent=", lineno)
            actions.append(ActionFrame(fields[1], agent, patient))
        else:
            raise CurriculumFormatError(f"expected 'entity' or 'action', got {fields[0]!r}", lineno)
    try:
        return Situation(tuple(entities), tuple(actions))
    except ValueError as err:
        raise CurriculumFormatError(str(err), lineno) from err


def curriculum_from_text(text: str, name: str = "unnamed",
                         lexicon: Lexicon | None = None) -> Curriculum:
    """Parse the block format; every utterance must parse under the lexicon."""
    lex = lexicon or default_lexicon()
    instances: list[LearningInstance] = []
    scene: Situation | None = None
    in_instance = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("name:") and not in_instance and not instances:
                name = body[len("name:"):].strip()
            continue
        if not line:
            continue
        if line == "instance":
            if in_instance:
                raise CurriculumFormatError("instance block missing its 'say:' line", lineno)
            in_instance = True
            scene = None
        elif line.startswith("scene:"):
            if not in_instance or scene is not None:
                raise CurriculumFormatError("unexpected 'scene:' line", lineno)
            scene = _parse_scene(line[len("scene:"):], lineno)
        elif line.startswith("say:"):
            if not in_instance:
                raise CurriculumFormatError("'say:' outside an instance block", lineno)
            utterance = line[len("say:"):].strip()
            try:
                parse(tokenize(utterance, lex), lex)
            except ParseError as err:
                raise CurriculumFormatError(
                    f"utterance does not parse: {err}", lineno) from err
            instances.append(LearningInstance(scene or Situation(), utterance))
            in_instance = False
            scene = None
        else:
            raise CurriculumFormatError(f"unexpected line {line.split()[0]!r}", lineno)
    if in_instance:
        raise CurriculumFormatError("file ends inside an instance block",
                                    len(text.splitlines()))
    return Curriculum(name, tuple(instances))


def save_curriculum(curriculum: Curriculum, destination: str | Path) -> None:
    Path(destination).write_text(curriculum_to_text(curriculum), encoding="utf-8")


def load_curriculum(source: str | Path, lexicon: Lexicon | None = None) -> Curriculum:
    path = Path(source)
    return curriculum_from_text(path.read_text(encoding="utf-8"), path.stem, lexicon)
