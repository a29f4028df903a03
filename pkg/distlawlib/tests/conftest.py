"""
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
import pytest

from ..classify import ConsequencePipeline
from ..relations import (RelationSystem, build_com_lie_system,
                         build_nlie2_system)


@pytest.fixture(scope='session')
def com_lie_system() -> RelationSystem:
    """Return the Com/Lie relation system"""
    return build_com_lie_system()


@pytest.fixture(scope='session')
def com_lie_pipeline(com_lie_system: RelationSystem) -> ConsequencePipeline:
    """Return a Com/Lie pipeline shared by every test of the session"""
    return ConsequencePipeline(com_lie_system)


@pytest.fixture(scope='session')
def nlie2_pipeline() -> ConsequencePipeline:
    """Return a Com/NLie2 pipeline shared by every test of the session"""
    return ConsequencePipeline(build_nlie2_system())
