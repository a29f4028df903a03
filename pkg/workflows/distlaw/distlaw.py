#!/usr/bin/env python
"""Classify the distributive laws between Com and Lie.

Runs one `distlaw` command, e.g. `classify` for the Groebner basis and the
solution components of a relation system, or `verify-point` to certify
parameter values. See `distlaw.py --help` for all options. The exit status
is 0 on success, 1 for invalid arguments, 2 when a pipeline invariant fails
and 3 when verify-point refutes a point.

Copyright 2021 Brain Electrophysiology Laboratory Company LLC

Licensed under the ApacheLicense, Version 2.0(the "License");
you may not use this module except in compliance with the License.
You may obtain a copy of the License at:

http: // www.apache.org / licenses / LICENSE - 2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an
"AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
ANY KIND, either express or implied.
"""
import sys

from distlawlib.cli import main

assert __name__ == "__main__"

sys.exit(main())
