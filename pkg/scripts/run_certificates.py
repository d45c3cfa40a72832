"""Run every certificate, print the rendered reports and save them as JSON."""

import argparse
import json
import time
from pathlib import Path

from adhmcert.certify import CERTIFICATES, run_certificate


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", default="results/certificates.json")
    p.add_argument("ids", nargs="*", default=sorted(CERTIFICATES))
    args = p.parse_args()
    docs = []
    t0 = time.perf_counter()
    for cid in args.ids:
        cert = run_certificate(cid)
        print(cert.render())
        docs.append(cert.to_dict())
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps({"certificates": docs, "seconds": time.perf_counter() - t0}, indent=2) + "\n")
    summary = ", ".join(f"{d['id']}={d['verdict']}" for d in docs)
    print(f"\n{summary}\nwritten to {out}")


if __name__ == "__main__":
    main()
