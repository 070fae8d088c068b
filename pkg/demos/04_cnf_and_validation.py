"""Export a puzzle to DIMACS and use independent counters to vet puzzles."""

from logigrid import bundled_names, count_models, defective_names, encode, load_bundled, write_dimacs
from logigrid.cli import verdict

cnf = encode(load_bundled("birthyears"))
text = write_dimacs(cnf)
clauses = [line for line in text.splitlines()[1:] if not line.startswith("c")]
print(text.splitlines()[0], f"({len(clauses)} clause lines)")

for name in bundled_names() + defective_names():
    p = load_bundled(name)
    _, status = verdict(p, 2)
    print(f"{name:30} models {count_models(encode(p), 3)}  {status}")
