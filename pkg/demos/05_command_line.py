# %% [markdown]
# # The `vsp` command
#
# The same capabilities are available from the shell as `vsp alpha`,
# `vsp solve`, `vsp verify-polytope` and `vsp bench`. Here they are driven
# in-process through `main`, which takes an argument list and output streams.

# %%
import io
import tempfile
from pathlib import Path

from vsp.cli import main
from vsp.graph import write_dimacs_col
from vsp.instances import cycle_graph, mycielski

work = Path(tempfile.mkdtemp())
(work / "myciel3.col").write_text(write_dimacs_col(mycielski(3)))
(work / "c6.col").write_text(write_dimacs_col(cycle_graph(6)))


def vsp(*args):
    out = io.StringIO()
    code = main([str(a) for a in args], stdout=out)
    print(f"$ vsp {' '.join(map(str, args))}   (exit {code})")
    print(out.getvalue())


# %%
vsp("alpha", work / "c6.col")

# %%
vsp("solve", work / "myciel3.col", "--oracle")
vsp("solve", work / "c6.col", "--beta", "2", "--cuts", "none", "--output", "csv")

# %%
vsp("verify-polytope", work / "c6.col", "--a", 1, "--b", 4)

# %%
(work / "bench.txt").write_text("myciel3.col\nc6.col\n")
vsp("bench", work / "bench.txt", "--output", "csv")
