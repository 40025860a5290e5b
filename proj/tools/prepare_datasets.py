#!/usr/bin/env python3
# Copyright 2026 The dpboost Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Converts raw UCI files into the numeric CSV + bounds JSON layout dpboost reads.

Usage:
  prepare_datasets.py adult   adult.data        data/adult
  prepare_datasets.py abalone abalone.data      data/abalone
  prepare_datasets.py covtype covtype.data.gz   data/covtype [--max-rows 100000]

Bounds are fixed schema ranges taken from the dataset documentation, never
computed from the rows being converted. Categorical columns are encoded as
ordinal codes over a fixed level list; the level list is part of the schema.
"""

import argparse
import csv
import gzip
import json
import os
import random
import sys

ADULT_CATEGORIES = {
    "workclass": ["?", "Federal-gov", "Local-gov", "Never-worked", "Private",
                  "Self-emp-inc", "Self-emp-not-inc", "State-gov",
                  "Without-pay"],
    "education": ["10th", "11th", "12th", "1st-4th", "5th-6th", "7th-8th",
                  "9th", "Assoc-acdm", "Assoc-voc", "Bachelors", "Doctorate",
                  "HS-grad", "Masters", "Preschool", "Prof-school",
                  "Some-college"],
    "marital-status": ["Divorced", "Married-AF-spouse", "Married-civ-spouse",
                       "Married-spouse-absent", "Never-married", "Separated",
                       "Widowed"],
    "occupation": ["?", "Adm-clerical", "Armed-Forces", "Craft-repair",
                   "Exec-managerial", "Farming-fishing", "Handlers-cleaners",
                   "Machine-op-inspct", "Other-service", "Priv-house-serv",
                   "Prof-specialty", "Protective-serv", "Sales",
                   "Tech-support", "Transport-moving"],
    "relationship": ["Husband", "Not-in-family", "Other-relative",
                     "Own-child", "Unmarried", "Wife"],
    "race": ["Amer-Indian-Eskimo", "Asian-Pac-Islander", "Black", "Other",
             "White"],
    "sex": ["Female", "Male"],
    "native-country": [
        "?", "Cambodia", "Canada", "China", "Columbia", "Cuba",
        "Dominican-Republic", "Ecuador", "El-Salvador", "England", "France",
        "Germany", "Greece", "Guatemala", "Haiti", "Holand-Netherlands",
        "Honduras", "Hong", "Hungary", "India", "Iran", "Ireland", "Italy",
        "Jamaica", "Japan", "Laos", "Mexico", "Nicaragua",
        "Outlying-US(Guam-USVI-etc)", "Peru", "Philippines", "Poland",
        "Portugal", "Puerto-Rico", "Scotland", "South", "Taiwan", "Thailand",
        "Trinadad&Tobago", "United-States", "Vietnam", "Yugoslavia"],
}

ADULT_COLUMNS = [
    ("age", (17, 90)),
    ("workclass", None),
    ("fnlwgt", (0, 1500000)),
    ("education", None),
    ("education-num", (1, 16)),
    ("marital-status", None),
    ("occupation", None),
    ("relationship", None),
    ("race", None),
    ("sex", None),
    ("capital-gain", (0, 100000)),
    ("capital-loss", (0, 4500)),
    ("hours-per-week", (1, 99)),
    ("native-country", None),
]

ABALONE_NUMERIC = [
    ("length", (0.0, 1.0)),
    ("diameter", (0.0, 1.0)),
    ("height", (0.0, 1.2)),
    ("whole_weight", (0.0, 3.0)),
    ("shucked_weight", (0.0, 1.5)),
    ("viscera_weight", (0.0, 0.8)),
    ("shell_weight", (0.0, 1.1)),
]

COVTYPE_NUMERIC = [
    ("elevation", (1800, 3900)),
    ("aspect", (0, 360)),
    ("slope", (0, 70)),
    ("horizontal_distance_to_hydrology", (0, 1400)),
    ("vertical_distance_to_hydrology", (-200, 650)),
    ("horizontal_distance_to_roadways", (0, 7200)),
    ("hillshade_9am", (0, 255)),
    ("hillshade_noon", (0, 255)),
    ("hillshade_3pm", (0, 255)),
    ("horizontal_distance_to_fire_points", (0, 7200)),
]


def write_outputs(out_dir, name, header, rows, feature_bounds, label_bounds):
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, name + ".csv")
    with open(csv_path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    bounds = {
        "features": [{"name": n, "min": lo, "max": hi}
                     for n, (lo, hi) in feature_bounds],
        "label": {"min": label_bounds[0], "max": label_bounds[1]},
    }
    with open(os.path.join(out_dir, name + ".bounds.json"), "w") as f:
        json.dump(bounds, f, indent=2)
        f.write("\n")
    print("wrote %d rows to %s" % (len(rows), csv_path), file=sys.stderr)


def prepare_adult(src, out_dir, _args):
    header = [c for c, _ in ADULT_COLUMNS] + ["income"]
    bounds = []
    for col, rng in ADULT_COLUMNS:
        if rng is None:
            rng = (0, len(ADULT_CATEGORIES[col]) - 1)
        bounds.append((col, rng))
    rows = []
    with open(src, newline="") as f:
        for rec in csv.reader(f):
            if not rec:
                continue
            rec = [c.strip() for c in rec]
            out = []
            for (col, rng), value in zip(ADULT_COLUMNS, rec):
                if rng is None:
                    out.append(ADULT_CATEGORIES[col].index(value))
                else:
                    out.append(int(value))
            out.append(1 if rec[14].rstrip(".") == ">50K" else -1)
            rows.append(out)
    write_outputs(out_dir, "adult", header, rows, bounds, (-1, 1))


def prepare_abalone(src, out_dir, _args):
    header = ["sex_m", "sex_f", "sex_i"] + [c for c, _ in ABALONE_NUMERIC]
    header.append("rings")
    bounds = [("sex_m", (0, 1)), ("sex_f", (0, 1)), ("sex_i", (0, 1))]
    bounds += ABALONE_NUMERIC
    rows = []
    with open(src, newline="") as f:
        for rec in csv.reader(f):
            if not rec:
                continue
            sex = rec[0].strip()
            out = [int(sex == "M"), int(sex == "F"), int(sex == "I")]
            out += [float(v) for v in rec[1:8]]
            out.append(int(rec[8]))
            rows.append(out)
    write_outputs(out_dir, "abalone", header, rows, bounds, (1, 29))


def prepare_covtype(src, out_dir, args):
    header = [c for c, _ in COVTYPE_NUMERIC]
    header += ["wilderness_%d" % i for i in range(4)]
    header += ["soil_%d" % i for i in range(40)]
    bounds = list(COVTYPE_NUMERIC) + [(c, (0, 1)) for c in header[10:]]
    header.append("cover_is_lodgepole")
    opener = gzip.open if src.endswith(".gz") else open
    rows = []
    with opener(src, "rt", newline="") as f:
        for rec in csv.reader(f):
            if not rec:
                continue
            out = [int(v) for v in rec[:54]]
            # Class 2 (lodgepole pine) versus the rest.
            out.append(1 if int(rec[54]) == 2 else -1)
            rows.append(out)
    if args.max_rows and len(rows) > args.max_rows:
        rows = random.Random(args.seed).sample(rows, args.max_rows)
    write_outputs(out_dir, "covtype", header, rows, bounds, (-1, 1))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("dataset", choices=["adult", "abalone", "covtype"])
    parser.add_argument("source")
    parser.add_argument("out_dir")
    parser.add_argument("--max-rows", type=int, default=0)
    parser.add_argument("--seed", type=int, default=20)
    args = parser.parse_args()
    {"adult": prepare_adult,
     "abalone": prepare_abalone,
     "covtype": prepare_covtype}[args.dataset](args.source, args.out_dir, args)


if __name__ == "__main__":
    main()
