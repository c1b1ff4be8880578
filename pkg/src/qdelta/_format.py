"""Number formatting shared by table serialisers and the CLI (17 significant digits)."""

import json
import math


def fmt_real(x):
    if x is None:
        return ""
    x = float(x) + 0.0  # folds -0 into 0
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def fmt_number(v):
    """Real values as ``%.17g``; complex values as ``a+bi`` (real form if ``b == 0``)."""
    if v is None:
        return ""
    if isinstance(v, complex) or hasattr(v, "imag") and not isinstance(v, (int, float)):
        v = complex(v)
        if v.imag == 0.0:
            return fmt_real(v.real)
        sign = "+" if v.imag >= 0 or math.isnan(v.imag) else "-"
        return f"{fmt_real(v.real)}{sign}{fmt_real(abs(v.imag))}i"
    return fmt_real(v)


def json_number(v):
    """JSON-safe value: floats kept, complex as ``{"re", "im"}``, non-finite as strings."""
    if v is None:
        return None
    if isinstance(v, complex):
        if v.imag == 0.0:
            return json_number(v.real)
        return {"re": json_number(v.real), "im": json_number(v.imag)}
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    x = float(v)
    return x if math.isfinite(x) else fmt_real(x)


def dumps17(obj, indent=2, _level=0):
    """JSON text with every float written as ``%.17g`` (non-finite floats as strings)."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return json.dumps(fmt_real(obj))
        return fmt_real(obj)
    if isinstance(obj, complex):
        return dumps17(json_number(obj), indent, _level)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps17(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}{dumps17(v, indent, _level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):
        return dumps17(obj.item(), indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")
