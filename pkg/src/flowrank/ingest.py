"""Parse tweet JSONL files into normalized interaction events.

Input is one status object per line (Twitter v1.1 shape). Recognized fields:
``id_str``, ``created_at``, ``text``/``full_text``,
``user.{id_str,screen_name,followers_count,friends_count,favourites_count,statuses_count}``,
``retweeted_status.user.*``, ``quoted_status.user.*``,
``in_reply_to_user_id_str``, ``in_reply_to_screen_name``,
``entities.user_mentions[].{id_str,screen_name}``.

A record passes the keyword filter when any keyword occurs as a
case-sensitive substring of its text. Interactions are deduplicated per
(kind, target) pair and self-interactions are dropped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

KIND_MENTION = "mention"
KIND_RETWEET = "retweet"
KIND_QUOTE = "quote"
KIND_REPLY = "reply"
INTERACTION_KINDS = (KIND_MENTION, KIND_RETWEET, KIND_QUOTE, KIND_REPLY)

# Collection filter terms, including the case variants used upstream.
DEFAULT_KEYWORDS = (
    "coronavirus",
    "Coronavirus",
    "#CoronavirusES",
    "coronavirusESP",
    "#coronavirus",
    "#Coronavirus",
    "covid19",
    "#covid19",
    "Covid19",
    "#Covid19",
    "covid-19",
    "#covid-19",
    "COVID-19",
    "#COVID-19",
)

_MONTHS = {
    "Jan": 1, "Feb": 2, "Mar": 3, "Apr": 4, "May": 5, "Jun": 6,
    "Jul": 7, "Aug": 8, "Sep": 9, "Oct": 10, "Nov": 11, "Dec": 12,
}

_DAYS_BEFORE_MONTH = (0, 0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334)


class ParseError(ValueError):
    """A line could not be turned into an InteractionRecord."""

    def __init__(self, message: str, line_no: int = 0):
        super().__init__(f"line {line_no}: {message}" if line_no else message)
        self.line_no = line_no


@dataclass(frozen=True)
class UserRef:
    """One reference to a user, with whatever profile counters were present.

    ``has_profile`` distinguishes references backed by a full user object
    (authors, retweeted/quoted authors) from bare mentions or reply targets,
    whose counters default to zero and must never overwrite real ones.
    """

    user_key: str
    screen_name: str = ""
    followers_count: int = 0
    friends_count: int = 0
    favourites_count: int = 0
    statuses_count: int = 0
    has_profile: bool = False

    def __post_init__(self):
        if not self.user_key:
            raise ValueError("user_key must be non-empty")
        for name in ("followers_count", "friends_count", "favourites_count", "statuses_count"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


@dataclass(frozen=True)
class Interaction:
    kind: str
    target: UserRef

    def __post_init__(self):
        if self.kind not in INTERACTION_KINDS:
            raise ValueError(f"unknown interaction kind {self.kind!r}")


@dataclass(frozen=True)
class InteractionRecord:
    post_id: str
    created_at: int  # epoch seconds; 0 when the timestamp was absent
    author: UserRef
    text: str
    interactions: tuple[Interaction, ...]


@dataclass(frozen=True)
class KeywordSet:
    keywords: tuple[str, ...] = DEFAULT_KEYWORDS

    def __post_init__(self):
        if not self.keywords:
            raise ValueError("keyword set must be non-empty")

    @classmethod
    def from_file(cls, path: str | Path) -> "KeywordSet":
        """One keyword per line; blank lines and # comments ignored."""
        terms = []
        for raw in Path(path).read_text(encoding="utf-8").splitlines():
            term = raw.strip()
            if term and not term.startswith("#"):
                terms.append(term)
        return cls(tuple(terms))


@dataclass
class IngestReport:
    parsed: int = 0
    filtered_out: int = 0
    errored: int = 0
    error_lines: list[int] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.parsed + self.filtered_out + self.errored

    def as_dict(self) -> dict:
        return {
            "parsed": self.parsed,
            "filtered_out": self.filtered_out,
            "errored": self.errored,
            "total": self.total,
        }


def matches_keywords(text: str, keywords: KeywordSet) -> bool:
    """True iff any keyword occurs as a case-sensitive substring of text."""
    return any(term in text for term in keywords.keywords)


def parse_timestamp(value) -> int:
    """Epoch seconds from a classic status timestamp or ISO 8601; 0 if unusable.

    The classic format ('Sat Apr 18 12:00:00 +0000 2020') is decoded with
    fixed English month names so the result is locale-independent.
    """
    if isinstance(value, (int, float)):
        return int(value)
    if not isinstance(value, str) or not value:
        return 0
    parts = value.split()
    if len(parts) == 6 and parts[1] in _MONTHS:
        try:
            month = _MONTHS[parts[1]]
            day = int(parts[2])
            hh, mm, ss = (int(x) for x in parts[3].split(":"))
            offset = parts[4]
            year = int(parts[5])
            sign = -1 if offset.startswith("-") else 1
            off_min = sign * (int(offset[1:3]) * 60 + int(offset[3:5]))
            days = _days_from_epoch(year, month, day)
            return days * 86400 + hh * 3600 + mm * 60 + ss - off_min * 60
        except (ValueError, IndexError):
            return 0
    try:
        from datetime import datetime, timezone

        dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return int(dt.timestamp())
    except ValueError:
        return 0


def _days_from_epoch(year: int, month: int, day: int) -> int:
    y = year - 1
    days = y * 365 + y // 4 - y // 100 + y // 400
    days += _DAYS_BEFORE_MONTH[month]
    if month > 2 and (year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)):
        days += 1
    return days + day - 1 - 719162  # 719162 = days before 1970-01-01


def _user_key(id_str, screen_name) -> str:
    """Canonical identity: numeric id when present, else lowercase handle."""
    if id_str:
        return str(id_str)
    if screen_name:
        return str(screen_name).lower()
    return ""


def _ref_from_user_object(obj: dict) -> UserRef | None:
    key = _user_key(obj.get("id_str") or obj.get("id"), obj.get("screen_name"))
    if not key:
        return None
    return UserRef(
        user_key=key,
        screen_name=str(obj.get("screen_name") or ""),
        followers_count=max(0, int(obj.get("followers_count") or 0)),
        friends_count=max(0, int(obj.get("friends_count") or 0)),
        favourites_count=max(0, int(obj.get("favourites_count") or 0)),
        statuses_count=max(0, int(obj.get("statuses_count") or 0)),
        has_profile=True,
    )


def parse_record(line: str, line_no: int = 0) -> InteractionRecord:
    """Parse one JSONL line into an InteractionRecord.

    Raises ParseError on malformed JSON or when the post id or author is
    missing. Interactions are extracted from the outer record only; embedded
    statuses contribute their author but are not unrolled recursively.
    """
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON ({exc.msg})", line_no) from exc
    if not isinstance(obj, dict):
        raise ParseError("line is not a JSON object", line_no)

    post_id = obj.get("id_str") or obj.get("id")
    if not post_id:
        raise ParseError("missing post id", line_no)
    user_obj = obj.get("user")
    if not isinstance(user_obj, dict):
        raise ParseError("missing author", line_no)
    author = _ref_from_user_object(user_obj)
    if author is None:
        raise ParseError("author has neither id nor screen_name", line_no)

    text = str(obj.get("full_text") or obj.get("text") or "")
    created_at = parse_timestamp(obj.get("created_at"))

    interactions: list[Interaction] = []
    seen: set[tuple[str, str]] = set()

    def _add(kind: str, target: UserRef | None):
        if target is None or target.user_key == author.user_key:
            return
        if (kind, target.user_key) in seen:
            return
        seen.add((kind, target.user_key))
        interactions.append(Interaction(kind, target))

    rt = obj.get("retweeted_status")
    if isinstance(rt, dict) and isinstance(rt.get("user"), dict):
        _add(KIND_RETWEET, _ref_from_user_object(rt["user"]))
    qt = obj.get("quoted_status")
    if isinstance(qt, dict) and isinstance(qt.get("user"), dict):
        _add(KIND_QUOTE, _ref_from_user_object(qt["user"]))

    reply_key = _user_key(obj.get("in_reply_to_user_id_str"), obj.get("in_reply_to_screen_name"))
    if reply_key:
        _add(KIND_REPLY, UserRef(user_key=reply_key,
                                 screen_name=str(obj.get("in_reply_to_screen_name") or "")))

    entities = obj.get("entities")
    if isinstance(entities, dict):
        for mention in entities.get("user_mentions") or []:
            if not isinstance(mention, dict):
                continue
            key = _user_key(mention.get("id_str") or mention.get("id"), mention.get("screen_name"))
            if key:
                _add(KIND_MENTION, UserRef(user_key=key,
                                           screen_name=str(mention.get("screen_name") or "")))

    return InteractionRecord(
        post_id=str(post_id),
        created_at=created_at,
        author=author,
        text=text,
        interactions=tuple(interactions),
    )


def ingest_file(path: str | Path, keywords: KeywordSet | None = None,
                strict: bool = False, report: IngestReport | None = None,
                ) -> Iterator[InteractionRecord]:
    """Stream keyword-matching records from a JSONL file.

    Counts go into ``report`` (parsed + filtered_out + errored always equals
    the number of input lines once the stream is exhausted). With
    strict=True the first parse error aborts; otherwise bad lines are
    counted and skipped.
    """
    if keywords is None:
        keywords = KeywordSet()
    if report is None:
        report = IngestReport()
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            try:
                record = parse_record(line, line_no)
            except ParseError:
                if strict:
                    raise
                report.errored += 1
                report.error_lines.append(line_no)
                continue
            if matches_keywords(record.text, keywords):
                report.parsed += 1
                yield record
            else:
                report.filtered_out += 1


# --- interaction event persistence (the artifact between ingest and build) ---


def _ref_to_json(ref: UserRef) -> dict:
    out: dict = {"key": ref.user_key, "screen": ref.screen_name}
    if ref.has_profile:
        out["profile"] = True
        out["followers"] = ref.followers_count
        out["friends"] = ref.friends_count
        out["favourites"] = ref.favourites_count
        out["statuses"] = ref.statuses_count
    return out


def _ref_from_json(obj: dict) -> UserRef:
    return UserRef(
        user_key=obj["key"],
        screen_name=obj.get("screen", ""),
        followers_count=obj.get("followers", 0),
        friends_count=obj.get("friends", 0),
        favourites_count=obj.get("favourites", 0),
        statuses_count=obj.get("statuses", 0),
        has_profile=bool(obj.get("profile")),
    )


def record_to_json(record: InteractionRecord) -> str:
    payload = {
        "post_id": record.post_id,
        "created_at": record.created_at,
        "author": _ref_to_json(record.author),
        "interactions": [
            {"kind": i.kind, "target": _ref_to_json(i.target)} for i in record.interactions
        ],
    }
    return json.dumps(payload, separators=(",", ":"), sort_keys=True, ensure_ascii=False)


def record_from_json(line: str) -> InteractionRecord:
    obj = json.loads(line)
    return InteractionRecord(
        post_id=obj["post_id"],
        created_at=obj["created_at"],
        author=_ref_from_json(obj["author"]),
        text="",
        interactions=tuple(
            Interaction(i["kind"], _ref_from_json(i["target"])) for i in obj["interactions"]
        ),
    )


def write_interactions(records, path: str | Path) -> int:
    """Write normalized events as JSONL; returns the record count."""
    count = 0
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(record_to_json(record))
            handle.write("\n")
            count += 1
    return count


def read_interactions(path: str | Path) -> Iterator[InteractionRecord]:
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                yield record_from_json(line)
