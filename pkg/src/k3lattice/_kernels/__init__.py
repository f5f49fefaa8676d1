"""Hot loops, with a compiled variant and a pure-Python fallback."""
