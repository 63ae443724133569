"""Runs `ddec detect` on a synthetic scene and validates the JSON against docs/result.schema.json."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

ddec, schema_path = sys.argv[1], Path(sys.argv[2])
schema = json.loads(schema_path.read_text())

with tempfile.TemporaryDirectory() as tmp:
    prefix = Path(tmp) / "scene"
    subprocess.run([ddec, "synth", "--circles", "50,50,30;140,60,35;90,145,40", "--noise", "0.01",
                    "--seed", "4", "--out", str(prefix)], check=True, capture_output=True)
    out = Path(tmp) / "result.json"
    subprocess.run([ddec, "detect", f"{prefix}.pbm", "--circles", "3", "--seed", "1", "--json", str(out)],
                   check=True, capture_output=True)
    text = out.read_text()
    doc = json.loads(text)
    jsonschema.validate(doc, schema)
    assert doc["detections"], "expected at least one detection"
    # Re-serializing must give the same bytes.
    assert json.dumps(doc, indent=2) + "\n" == text, "JSON does not round-trip byte for byte"
print("schema ok")
