"""

Copyright (C) 2024 The hawkesweb developers.

This Source Code Form is subject to the terms of the
Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""

import csv
import errno
import json
import os


def read_file(filename, readlines=True):
    """read a file, returning a list of lines (default) or the raw content.

    Arguments:
      - filename (str) : the filename to read
      - readlines (bool) : read lines of the file (vs all raw)
    """
    with open(filename, "r") as filey:
        if readlines is True:
            content = filey.readlines()
        else:
            content = filey.read()
    return content


def dumps(obj):
    """serialize one record the same way every time (sorted keys, compact)"""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_json(json_obj, filename, pretty=True):
    """write a json object to file, pretty printed with sorted keys

    Arguments:
     - json_obj (dict) : the dict to print to json
     - filename (str) : the output file to write to
    """
    with open(filename, "w") as filey:
        if pretty:
            filey.write(json.dumps(json_obj, indent=4, sort_keys=True))
        else:
            filey.write(dumps(json_obj))
        filey.write("\n")
    return filename


def read_json(input_file):
    """Read json from an input file."""
    with open(input_file, "r") as filey:
        return json.loads(filey.read())


def write_jsonl(records, filename):
    """write an iterable of dicts as line-delimited json, one record per line"""
    with open(filename, "w") as filey:
        for record in records:
            filey.write(dumps(record))
            filey.write("\n")
    return filename


def read_jsonl(input_file):
    """yield one parsed record per non-empty line of a line-json file"""
    with open(input_file, "r") as filey:
        for line in filey:
            line = line.strip()
            if line:
                yield json.loads(line)


def read_rows(filepath, delim=None, comment="#"):
    """
    read the data rows of a delimited file, skipping blank and comment lines.
    The delimiter is sniffed from the extension when not given.
    """
    if delim is None:
        delim = "\t" if filepath.endswith((".tsv", ".tab")) else ","

    rows = []
    with open(filepath, newline="") as infile:
        for row in csv.reader(infile, delimiter=delim):
            row = [x.strip() for x in row]
            if not row or not any(row) or row[0].startswith(comment):
                continue
            rows.append(row)
    return rows


def write_rows(rows, filename, header=None, delim=","):
    """write rows (lists) to a delimited file with an optional header"""
    with open(filename, "w", newline="") as outfile:
        writer = csv.writer(outfile, delimiter=delim, lineterminator="\n")
        if header:
            writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    return filename


def mkdir_p(path):
    """mkdir_p attempts to get the same functionality as mkdir -p

    Arguments:
     - path (str) : the path to create
    """
    try:
        os.makedirs(path)
    except OSError as e:
        if e.errno == errno.EEXIST and os.path.isdir(path):
            pass
        else:
            raise e
    return path
