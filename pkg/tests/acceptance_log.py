"""One result line per acceptance criterion, collected across the session."""

_results: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    _results[number] = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else "")
    print(_results[number])


def lines() -> list[str]:
    return [_results[k] for k in sorted(_results)]
