"""
Sweeping a family parameter
===========================

``secondform scan`` from Python: fit A across a one-parameter family and
watch the residual and eigenvalues.
"""
import csv
import io
import contextlib

from secondform.cli import main

for argv in (["scan", "--family", "catalog:sphere", "--param", "r", "--range", "0.5:3:6"],
             ["scan", "--family", "catalog:torus?R=3", "--param", "a", "--range", "0.5:2.5:5"],
             ["scan", "--family", "catalog:catenoid", "--param", "c", "--range", "0.5:2:4"]):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    print(" ".join(argv[1:]), "-> exit", code)
    for row in csv.DictReader(io.StringIO(buf.getvalue())):
        key = argv[4]
        print("  %s=%-5s rms %-9.2e lambda %-10.6f mu %-10.6f %s"
              % (key, row[key], float(row["rms_residual"]), float(row["lambda"]), float(row["mu"]), row["case"]))
