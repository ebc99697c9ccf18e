"""Deterministic synthetic tweet corpus for pipeline tests and demos.

Generates status JSONL in the classic v1.1 shape with a power-law-ish
user population: a few prolific authors and popular targets, a long tail
of one-off participants. The mix deliberately includes records that
exercise every ingest branch — non-matching texts, malformed lines,
missing-user objects, self-mentions, duplicate mentions — in fixed
proportions, so downstream counts are stable for a given seed.

Uses the stdlib Mersenne generator; one seed, one byte stream.
"""

from __future__ import annotations

import bisect
import json
import random
from pathlib import Path

from .ingest import DEFAULT_KEYWORDS

DEFAULT_SEED = 20200418
DEFAULT_RECORDS = 10000
_BASE_EPOCH = 1585699200  # 2020-04-01 00:00:00 UTC

_WEEKDAYS = ("Thu", "Fri", "Sat", "Sun", "Mon", "Tue", "Wed")
_MONTH_STARTS = (("Apr", 1585699200, 30), ("May", 1588291200, 31))

_FIRST = (
    "madrid", "salud", "noticias", "data", "viral", "info", "press",
    "covid", "radio", "doctor", "ana", "luis", "marta", "jorge", "lucia",
    "pablo", "sara", "ivan", "nerea", "carlos",
)
_SECOND = (
    "es", "news", "2020", "official", "mx", "ar", "co", "press", "live",
    "hoy", "online", "real", "sur", "norte", "tv",
)

_TEMPLATES_MATCH = (
    "Ultimas cifras de {kw} actualizadas {tag}",
    "RT para difundir: medidas frente a {kw} en vigor",
    "Hilo sobre {kw} y la situacion en los hospitales",
    "Nuevo informe {tag} sobre {kw}, datos abiertos",
    "Lo que sabemos hoy de {kw} {tag}",
    "Mapa interactivo de casos {kw} por provincia",
    "Rueda de prensa a las 12:00 sobre {kw}",
    "Estudio preliminar: transmision de {kw} en espacios cerrados",
)

_TEMPLATES_NOMATCH = (
    "Que gran partido el de anoche, increible remontada",
    "Receta de lentejas de mi abuela, exito asegurado",
    "Buscando recomendaciones de series para el finde",
    "La primavera ha llegado al parque del Retiro",
)

_TAGS = ("#quedateencasa", "#datos", "#sanidad", "#ciencia", "")


def _fmt_created_at(epoch: int) -> str:
    days, rem = divmod(epoch - _BASE_EPOCH, 86400)
    month, month_start, month_days = _MONTH_STARTS[0]
    if days >= _MONTH_STARTS[0][2]:
        month, month_start, month_days = _MONTH_STARTS[1]
    day = (epoch - month_start) // 86400 + 1
    hh, rem = divmod(rem, 3600)
    mm, ss = divmod(rem, 60)
    weekday = _WEEKDAYS[(epoch // 86400) % 7]
    return f"{weekday} {month} {day:02d} {hh:02d}:{mm:02d}:{ss:02d} +0000 2020"


class _Population:
    def __init__(self, rng: random.Random, size: int):
        self.rng = rng
        self.size = size
        self.screen_names = []
        seen = set()
        for i in range(size):
            base = f"{rng.choice(_FIRST)}_{rng.choice(_SECOND)}"
            name = base
            while name in seen:
                name = f"{base}{rng.randrange(10, 999)}"
            seen.add(name)
            self.screen_names.append(name)
        self.followers = [int(rng.lognormvariate(5.0, 1.8)) for _ in range(size)]
        self.friends = [int(rng.lognormvariate(5.2, 1.2)) for _ in range(size)]
        self.favourites = [int(rng.lognormvariate(4.0, 1.9)) for _ in range(size)]
        self.statuses = [int(rng.lognormvariate(6.0, 1.5)) for _ in range(size)]
        # zipf-ish author activity; an independent shuffle for target fame
        author_w = [1.0 / (i + 1) ** 1.05 for i in range(size)]
        fame_order = list(range(size))
        rng.shuffle(fame_order)
        target_w = [0.0] * size
        for rank, idx in enumerate(fame_order):
            target_w[idx] = 1.0 / (rank + 1) ** 1.15
        self._author_cum = _cumulative(author_w)
        self._target_cum = _cumulative(target_w)

    def id_str(self, i: int) -> str:
        return str(1_000_000 + i)

    def user_object(self, i: int) -> dict:
        return {
            "id_str": self.id_str(i),
            "screen_name": self.screen_names[i],
            "followers_count": self.followers[i],
            "friends_count": self.friends[i],
            "favourites_count": self.favourites[i],
            "statuses_count": self.statuses[i],
        }

    def pick_author(self) -> int:
        return _weighted_pick(self.rng, self._author_cum)

    def pick_target(self, exclude: int) -> int:
        for _ in range(8):
            i = _weighted_pick(self.rng, self._target_cum)
            if i != exclude:
                return i
        return (exclude + 1) % self.size


def _cumulative(weights: list[float]) -> list[float]:
    total = 0.0
    out = []
    for w in weights:
        total += w
        out.append(total)
    return out


def _weighted_pick(rng: random.Random, cum: list[float]) -> int:
    return bisect.bisect_left(cum, rng.random() * cum[-1])


def generate_records(seed: int = DEFAULT_SEED,
                     count: int = DEFAULT_RECORDS,
                     users: int = 2600):
    """Yield one corpus line (raw text, no newline) per record."""
    rng = random.Random(seed)
    pop = _Population(rng, users)
    for i in range(count):
        epoch = _BASE_EPOCH + i * 470 + rng.randrange(0, 470)
        roll = rng.random()
        if roll < 0.010:
            yield '{"id_str": "broken", "user": '  # malformed JSON
            continue
        if roll < 0.015:
            yield json.dumps({"id_str": f"nouser{i}",
                              "created_at": _fmt_created_at(epoch),
                              "text": "registro sin autor coronavirus"})
            continue
        yield json.dumps(_make_status(rng, pop, i, epoch),
                         ensure_ascii=False, sort_keys=True)


def _make_text(rng: random.Random, matching: bool) -> str:
    if not matching:
        return rng.choice(_TEMPLATES_NOMATCH)
    template = rng.choice(_TEMPLATES_MATCH)
    return template.format(kw=rng.choice(DEFAULT_KEYWORDS),
                           tag=rng.choice(_TAGS)).strip()


def _make_status(rng: random.Random, pop: _Population, i: int,
                 epoch: int) -> dict:
    author = pop.pick_author()
    status = {
        "id_str": str(1_250_000_000_000 + i),
        "created_at": _fmt_created_at(epoch),
        "user": pop.user_object(author),
        "text": _make_text(rng, matching=rng.random() < 0.92),
    }
    mentions: list[int] = []
    kind = rng.random()
    if kind < 0.45:  # retweet
        target = pop.pick_target(author)
        status["retweeted_status"] = {
            "id_str": str(1_249_000_000_000 + i),
            "user": pop.user_object(target),
        }
        status["text"] = f"RT @{pop.screen_names[target]}: {status['text']}"
        if rng.random() < 0.6:  # the RT's leading mention entity
            mentions.append(target)
    elif kind < 0.70:  # original tweet with mentions
        for _ in range(rng.randrange(1, 4)):
            mentions.append(pop.pick_target(author))
        if rng.random() < 0.05:
            mentions.append(author)  # self-mention, dropped at parse
        if rng.random() < 0.05 and mentions:
            mentions.append(mentions[0])  # duplicate, deduplicated at parse
    elif kind < 0.85:  # reply
        target = pop.pick_target(author)
        status["in_reply_to_user_id_str"] = pop.id_str(target)
        status["in_reply_to_screen_name"] = pop.screen_names[target]
        status["text"] = f"@{pop.screen_names[target]} {status['text']}"
        mentions.append(target)
    elif kind < 0.93:  # quote
        target = pop.pick_target(author)
        status["quoted_status"] = {
            "id_str": str(1_248_000_000_000 + i),
            "user": pop.user_object(target),
        }
    # else: plain status, no interactions
    if mentions:
        status["entities"] = {
            "user_mentions": [
                {"id_str": pop.id_str(t), "screen_name": pop.screen_names[t]}
                for t in mentions
            ]
        }
    return status


def write_corpus(path: str | Path, seed: int = DEFAULT_SEED,
                 count: int = DEFAULT_RECORDS, users: int = 2600) -> int:
    lines = 0
    with open(path, "w", encoding="utf-8") as fh:
        for line in generate_records(seed, count, users):
            fh.write(line)
            fh.write("\n")
            lines += 1
    return lines
