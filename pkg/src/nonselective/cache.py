"""On-disk cache of computed class data, one text file per (discriminant, modulus)."""
from __future__ import annotations

import os
import tempfile
from pathlib import Path

from . import textformat


def cache_key(disc: int, modulus) -> str:
    mod = ".".join(str(v) for v in sorted(modulus)) or "none"
    sign = "m" if disc < 0 else ""
    return f"disc{sign}{abs(disc)}_mod{mod}.txt"


class ClassDataCache:
    def __init__(self, root):
        self.root = Path(root)

    def path(self, disc: int, modulus) -> Path:
        return self.root / cache_key(disc, modulus)

    def get(self, disc: int, modulus) -> dict | None:
        p = self.path(disc, modulus)
        if not p.exists():
            return None
        return textformat.load(p)

    def put(self, disc: int, modulus, data: dict) -> Path:
        """Write atomically: a temp file in the same directory, then rename over the target."""
        self.root.mkdir(parents=True, exist_ok=True)
        target = self.path(disc, modulus)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".txt")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(textformat.dumps(data))
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return target
