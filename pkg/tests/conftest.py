import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", None) != "call":
                continue
            props = dict(rep.user_properties)
            if "criterion" in props:
                lines.append((props["criterion"], outcome.upper(), props.get("detail", "")))
    if lines:
        terminalreporter.section("acceptance criteria")
        for crit, outcome, detail in sorted(lines, key=lambda t: t[0]):
            terminalreporter.write_line(f"criterion {crit}: {'PASS' if outcome == 'PASSED' else 'FAIL'}"
                                        + (f"  [{detail}]" if detail else ""))
