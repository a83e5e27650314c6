# Copyright 2026 The gsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes the example circuits in circuits/.

Each code circuit prepares the logical |+> of a self-dual CSS color code,
checks every face with MPP, applies a transversal T layer followed by a T_DAG
layer, then measures all data qubits in the X basis.
"""

import pathlib
import sys

STEANE_FACES = [[1, 2, 3, 4], [0, 1, 3, 5], [3, 4, 5, 6]]
COLOR_D5_FACES = [
    [1, 2, 5, 6], [3, 4, 7, 8], [0, 1, 5, 9], [2, 3, 6, 7, 10, 11],
    [5, 6, 9, 10, 12, 13], [7, 8, 11, 14], [10, 11, 13, 14, 15, 16],
    [12, 13, 15, 17], [15, 16, 17, 18],
]

BELL = """\
# Bell pair with a parity detector.
H 0
TICK
CX 0 1
TICK
M 0 1
DETECTOR rec[-1] rec[-2]
OBSERVABLE_INCLUDE(0) rec[-1] rec[-2]
"""


def plus_encoder(n, faces):
    """Pivots and rows of the reduced X-check matrix plus the logical X row."""
    rows = [[1 if q in f else 0 for q in range(n)] for f in faces]
    rows.append([1] * n)
    rank = 0
    pivots = []
    for c in range(n):
        k = next((k for k in range(rank, len(rows)) if rows[k][c]), None)
        if k is None:
            continue
        rows[rank], rows[k] = rows[k], rows[rank]
        for j in range(len(rows)):
            if j != rank and rows[j][c]:
                rows[j] = [a ^ b for a, b in zip(rows[j], rows[rank])]
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return pivots, rows[:rank]


def t_check_circuit(title, n, faces):
    pivots, rows = plus_encoder(n, faces)
    qs = " ".join(str(q) for q in range(n))
    out = [f"# {title}: logical |+>, face checks, transversal T then T_DAG, X readout.",
           f"R {qs}", "TICK", "H " + " ".join(str(p) for p in pivots), "TICK"]
    for p, row in zip(pivots, rows):
        pairs = [f"{p} {q}" for q in range(n) if q != p and row[q]]
        if pairs:
            out.append("CX " + " ".join(pairs))
            out.append("TICK")
    for basis in "ZX":
        out.append("MPP " + " ".join("*".join(f"{basis}{q}" for q in f) for f in faces))
        for i in range(len(faces)):
            out.append(f"DETECTOR rec[-{len(faces) - i}]")
        out.append("TICK")
    out += [f"T {qs}", "TICK", f"T_DAG {qs}", "TICK", f"MX {qs}"]
    for f in faces:
        out.append("DETECTOR " + " ".join(f"rec[-{n - q}]" for q in f))
    out.append("OBSERVABLE_INCLUDE(0) " + " ".join(f"rec[-{n - q}]" for q in range(n)))
    return "\n".join(out) + "\n"


def main():
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).parent.parent / "circuits")
    root.mkdir(parents=True, exist_ok=True)
    (root / "bell.stim").write_text(BELL)
    (root / "steane_t_check.stim").write_text(t_check_circuit("Steane [[7,1,3]]", 7, STEANE_FACES))
    (root / "color_d5_t_check.stim").write_text(t_check_circuit("Distance-5 color code [[19,1,5]]", 19, COLOR_D5_FACES))


if __name__ == "__main__":
    main()
