"""Run every study with a seed and print its checks; outputs go to ./study_out."""
from lambdavar.experiments import STUDIES, default_config, run_study

for name in STUDIES:
    kw = {"seed": 1, "count": 50} if name in ("embedding", "vn", "inclusion") else {}
    rep = run_study(default_config(name, **kw))
    rep.write("study_out", svg=True)
    print("\n".join(rep.check_lines()))
    print("  summary keys:", sorted(rep.summary))
