"""Review-record data model and corpus loading.

A corpus file is UTF-8 JSON Lines: one flat object per line with keys
exactly ``change_id``, ``patch_id``, ``file_path``, ``line``, ``comment``,
``reviewer_id``, ``timestamp`` (ISO-8601), ``project``. Unknown keys are
ignored with a warning. A loaded Corpus is immutable and chronologically
sorted, so it is safe to share across concurrent readers.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import EmptyCorpusError, ValidationError

RECORD_FIELDS = (
    "change_id",
    "patch_id",
    "file_path",
    "line",
    "comment",
    "reviewer_id",
    "timestamp",
    "project",
)


@dataclass(frozen=True)
class ReviewRecord:
    """One reviewed code change: a file path, a review comment, and who
    reviewed it. ``line`` is informational only; no similarity method
    reads it, but it is kept for round-trip fidelity."""

    change_id: str
    patch_id: str
    file_path: str
    line: int
    comment: str
    reviewer_id: str
    timestamp: datetime
    project: str

    def sort_key(self) -> tuple:
        return (self.timestamp, self.change_id, self.patch_id, self.reviewer_id)


@dataclass(frozen=True)
class Corpus:
    """Chronologically ordered review records for one project."""

    project: str
    records: tuple[ReviewRecord, ...]

    def __len__(self) -> int:
        return len(self.records)


def validate_record(record: ReviewRecord) -> None:
    """Raise ValidationError (naming the field) if a record invariant fails."""
    if not record.file_path:
        raise ValidationError("file_path must be non-empty", field="file_path")
    if any(not seg.strip() for seg in record.file_path.split("/")):
        raise ValidationError(
            f"file_path {record.file_path!r} has a whitespace-only segment", field="file_path"
        )
    if not record.comment.strip():
        raise ValidationError("comment must be non-empty after trimming", field="comment")
    if not record.reviewer_id:
        raise ValidationError("reviewer_id must be non-empty", field="reviewer_id")
    if record.line < 0:
        raise ValidationError(f"line must be non-negative, got {record.line}", field="line")


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 instant; a missing timezone is read as UTC."""
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    parsed = datetime.fromisoformat(text)
    if parsed.tzinfo is None:
        parsed = parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def format_timestamp(value: datetime) -> str:
    return value.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def parse_record_line(line: str, line_no: int) -> ReviewRecord:
    """Parse and validate one record line; errors carry the line number."""
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as err:
        raise ValidationError(f"line {line_no}: invalid JSON ({err.msg})", line_no=line_no) from err
    if not isinstance(raw, dict):
        raise ValidationError(f"line {line_no}: record is not an object", line_no=line_no)

    unknown = sorted(set(raw) - set(RECORD_FIELDS))
    if unknown:
        warnings.warn(f"line {line_no}: ignoring unknown keys {unknown}", stacklevel=2)

    def fail(field: str, message: str) -> ValidationError:
        return ValidationError(f"line {line_no}: {field}: {message}", line_no=line_no, field=field)

    values = {}
    for field in RECORD_FIELDS:
        if field not in raw:
            raise fail(field, "missing")
        values[field] = raw[field]
    for field in ("change_id", "patch_id", "file_path", "comment", "reviewer_id", "project"):
        if not isinstance(values[field], str):
            raise fail(field, f"expected a string, got {type(values[field]).__name__}")
    if not isinstance(values["line"], int) or isinstance(values["line"], bool):
        raise fail("line", f"expected an integer, got {values['line']!r}")
    if not isinstance(values["timestamp"], str):
        raise fail("timestamp", "expected an ISO-8601 string")
    try:
        values["timestamp"] = parse_timestamp(values["timestamp"])
    except ValueError as err:
        raise fail("timestamp", f"not ISO-8601 ({values['timestamp']!r})") from err

    record = ReviewRecord(**values)
    try:
        validate_record(record)
    except ValidationError as err:
        raise fail(err.field or "record", str(err)) from err
    return record


def read_record_file(path: str | Path) -> tuple[list[ReviewRecord], list[ValidationError]]:
    """Read every line, collecting parsed records and per-line errors.

    Missing files raise the underlying OSError. Blank lines are ignored
    with a warning.
    """
    records: list[ReviewRecord] = []
    errors: list[ValidationError] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh.read().splitlines(), start=1):
            if not line.strip():
                warnings.warn(f"line {line_no}: blank line ignored", stacklevel=2)
                continue
            try:
                records.append(parse_record_line(line, line_no))
            except ValidationError as err:
                errors.append(err)
    return records, errors


def load_corpus(path: str | Path, project: str) -> Corpus:
    """Load the given project's records from a record file, sorted
    chronologically (ties broken by change_id, patch_id, reviewer_id).

    Records for other projects in the same file are skipped. Raises the
    first per-line ValidationError, or EmptyCorpusError when no record
    of the project survives.
    """
    records, errors = read_record_file(path)
    if errors:
        raise errors[0]
    selected = sorted((r for r in records if r.project == project), key=ReviewRecord.sort_key)
    if not selected:
        raise EmptyCorpusError(f"no records for project {project!r} in {path}")
    return Corpus(project=project, records=tuple(selected))


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus back out in the record file format."""
    with open(path, "w", encoding="utf-8") as fh:
        for record in corpus.records:
            payload = {field: getattr(record, field) for field in RECORD_FIELDS}
            payload["timestamp"] = format_timestamp(record.timestamp)
            fh.write(json.dumps(payload, ensure_ascii=False) + "\n")


def distinct_reviewers(corpus: Corpus) -> set[str]:
    """The deduplicated set of reviewer ids in the corpus."""
    if not corpus.records:
        raise EmptyCorpusError(f"corpus for project {corpus.project!r} has no records")
    return {record.reviewer_id for record in corpus.records}
