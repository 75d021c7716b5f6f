#!/usr/bin/env python3
"""Regenerate data/ from packaged copies of Iris and MNIST.

Iris comes from scikit-learn's bundled iris.csv and is rewritten in the UCI
layout (4 numeric columns + species name). MNIST comes from mlxtend's bundled
5000-image subset of the original training set (500 images per digit) and is
written out in the IDX binary format used by the original distribution.

    pip download mlxtend --no-deps -d /tmp/mlx
    python3 scripts/make_datasets.py --mlxtend-wheel /tmp/mlx/mlxtend-*.whl
"""
import argparse
import csv
import gzip
import io
import os
import struct
import zipfile

import numpy as np
import sklearn

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SPECIES = ["Iris-setosa", "Iris-versicolor", "Iris-virginica"]


def write_iris(out_path):
    src = os.path.join(os.path.dirname(sklearn.__file__), "datasets", "data", "iris.csv")
    with open(src) as f:
        rows = list(csv.reader(f))[1:]
    with open(out_path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["sepal_length", "sepal_width", "petal_length", "petal_width", "species"])
        for r in rows:
            w.writerow(r[:4] + [SPECIES[int(r[4])]])


def write_mnist(wheel, out_dir):
    with zipfile.ZipFile(wheel) as z:
        raw = z.read("mlxtend/data/data/mnist_5k.csv.gz")
    data = np.loadtxt(io.BytesIO(gzip.decompress(raw)), delimiter=",")
    images = data[:, :-1].astype(np.uint8)
    labels = data[:, -1].astype(np.uint8)
    n = images.shape[0]
    with open(os.path.join(out_dir, "mnist5k-images-idx3-ubyte"), "wb") as f:
        f.write(struct.pack(">IIII", 2051, n, 28, 28))
        f.write(images.tobytes())
    with open(os.path.join(out_dir, "mnist5k-labels-idx1-ubyte"), "wb") as f:
        f.write(struct.pack(">II", 2049, n))
        f.write(labels.tobytes())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--mlxtend-wheel", required=True)
    args = ap.parse_args()
    write_iris(os.path.join(ROOT, "data", "iris.csv"))
    os.makedirs(os.path.join(ROOT, "data", "mnist"), exist_ok=True)
    write_mnist(args.mlxtend_wheel, os.path.join(ROOT, "data", "mnist"))


if __name__ == "__main__":
    main()
