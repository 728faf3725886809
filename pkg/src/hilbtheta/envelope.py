"""Machine-readable output records.  All integers and rationals are written
as decimal strings so that large coefficients survive any JSON reader."""

import json

from .lattice import DecompositionTerm
from .qspecial import IdentityReport
from .series import QSeries, format_rational, parse_rational

FORMAT_VERSION = 1

__all__ = ["FORMAT_VERSION", "encode_result", "decode_result", "dumps", "loads",
           "report_to_record", "report_from_record"]


def _enc_value(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (list, tuple)):
        return [_enc_value(x) for x in v]
    return format_rational(v)


def _dec_value(v):
    if v is None or isinstance(v, bool):
        return v
    try:
        return parse_rational(v)
    except ValueError:
        return v


def report_to_record(rep):
    return {
        "name": rep.name,
        "passed": rep.passed,
        "discrepancy": None if rep.discrepancy is None else
        {k: _enc_value(v) for k, v in rep.discrepancy.items()},
        "details": None if rep.details is None else
        {k: _enc_value(v) for k, v in rep.details.items()},
    }


def report_from_record(rec):
    def dec(d):
        return None if d is None else {k: _dec_value(v) for k, v in d.items()}
    return IdentityReport(rec["name"], rec["passed"], dec(rec["discrepancy"]), dec(rec["details"]))


def encode_result(kind, value):
    """Record for a result; ``kind`` is one of series, count, terms, report,
    reports, listing."""
    if kind == "series":
        body = value.to_record()
    elif kind == "count":
        body = str(value)
    elif kind == "terms":
        body = [t.to_record() for t in value]
    elif kind == "report":
        body = report_to_record(value)
    elif kind == "reports":
        body = [report_to_record(r) for r in value]
    elif kind == "listing":
        body = [[[str(x) for x in rows] for rows in tup] for tup in value]
    else:
        raise ValueError(f"unknown result kind {kind!r}")
    return {"kind": kind, "value": body}


def decode_result(rec):
    kind, body = rec["kind"], rec["value"]
    if kind == "series":
        return QSeries.from_record(body)
    if kind == "count":
        return int(body)
    if kind == "terms":
        return [DecompositionTerm.from_record(t) for t in body]
    if kind == "report":
        return report_from_record(body)
    if kind == "reports":
        return [report_from_record(r) for r in body]
    if kind == "listing":
        return [[[int(x) for x in rows] for rows in tup] for tup in body]
    raise ValueError(f"unknown result kind {kind!r}")


def dumps(command, parameters, results, extra=None):
    """Serialize an output envelope.  ``results`` maps a name to ``(kind, value)``."""
    env = {
        "command": command,
        "format_version": FORMAT_VERSION,
        "parameters": {k: _enc_value(v) for k, v in parameters.items()},
        "result": {name: encode_result(kind, val) for name, (kind, val) in results.items()},
    }
    if extra:
        env["metadata"] = {k: _enc_value(v) for k, v in extra.items()}
    return json.dumps(env, indent=2)


def loads(text):
    """Parse an envelope, decoding every result back into library objects."""
    env = json.loads(text)
    env["result"] = {name: decode_result(rec) for name, rec in env["result"].items()}
    return env
