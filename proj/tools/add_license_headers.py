#!/usr/bin/env python3
# Copyright 2026 The Spacetime-GR Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Prepends the Apache-2.0 header to source files that lack it."""

import pathlib
import sys

NOTICE = """Copyright 2026 The Spacetime-GR Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License."""

STYLES = {
    ".h": "//", ".cc": "//",
    ".py": "#", ".txt": "#",
}
DIRS = ["include", "src", "tests", "tools"]


def header(prefix):
    return "\n".join((prefix + " " + line).rstrip() for line in NOTICE.splitlines()) + "\n\n"


def main(root):
    root = pathlib.Path(root)
    paths = [root / "CMakeLists.txt"]
    for d in DIRS:
        paths += sorted(p for p in (root / d).rglob("*") if p.is_file())
    changed = 0
    for path in paths:
        prefix = STYLES.get(path.suffix)
        if prefix is None:
            continue
        text = path.read_text()
        if "Licensed under the Apache License" in text[:1000]:
            continue
        shebang = ""
        if text.startswith("#!"):
            shebang, _, text = text.partition("\n")
            shebang += "\n"
        path.write_text(shebang + header(prefix) + text)
        changed += 1
    print(f"added headers to {changed} files")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent)
