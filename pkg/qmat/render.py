"""Output rendering: aligned tables, a JSON envelope, CSV."""

import csv
import io
import json

import config

FORMATS = ["table", "json", "csv"]


def _cell(value):
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value) if value else "-"
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _grid(columns, rows):
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[k]) for r in cells]) for k, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return lines


def render_table(command, result, findings):
    lines = []
    if "suites" in result:
        for suite in result["suites"]:
            status = "PASS" if suite["passed"] else "FAIL"
            lines.append(f"=== {suite['suite']} [{status}] {suite['claim']} ===")
            lines += _grid(suite["columns"] + ["passed"], suite["rows"])
            lines.append("")
    else:
        for key, value in result.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                lines.append(f"{key}:")
                columns = list(value[0].keys())
                lines += ["  " + ln for ln in _grid(columns, value)]
            else:
                lines.append(f"{key}: {_cell(value)}")
    if findings:
        lines.append(f"findings: {len(findings)}")
        for f in findings:
            witness = f" (witness {f['witness']})" if f.get("witness") else ""
            lines.append(f"  {f['claim']}: expected {_cell(f['expected'])}, got {_cell(f['actual'])}{witness}")
    return "\n".join(lines).rstrip() + "\n"


def render_json(command, run_config, result, findings):
    envelope = {
        "schema_version": config.SCHEMA_VERSION,
        "command": command,
        "config": run_config,
        "result": result,
        "findings": findings,
    }
    return json.dumps(envelope, sort_keys=True, indent=2) + "\n"


def render_csv(command, result, findings):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if "suites" in result:
        writer.writerow(["suite", "row", "column", "value"])
        for suite in result["suites"]:
            for k, row in enumerate(suite["rows"]):
                for c in suite["columns"] + ["passed"]:
                    writer.writerow([suite["suite"], k, c, _cell(row.get(c))])
    else:
        writer.writerow(["key", "value"])
        for key, value in result.items():
            if isinstance(value, list) and value and isinstance(value[0], dict):
                for k, item in enumerate(value):
                    for sub, v in item.items():
                        writer.writerow([f"{key}[{k}].{sub}", _cell(v)])
            else:
                writer.writerow([key, _cell(value)])
    for f in findings:
        writer.writerow(["finding", f"{f['claim']}: expected {_cell(f['expected'])}, got {_cell(f['actual'])}"])
    return buf.getvalue()


def render(fmt, command, run_config, result, findings):
    if fmt == "table":
        return render_table(command, result, findings)
    if fmt == "json":
        return render_json(command, run_config, result, findings)
    if fmt == "csv":
        return render_csv(command, result, findings)
    raise ValueError(f"Unknown format: {fmt}. Use: {FORMATS}")
