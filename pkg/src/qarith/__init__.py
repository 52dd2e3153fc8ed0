"""qarith: reversible quantum arithmetic circuits and cost models.

Subpackages/modules:

- ``circuits``    gate/circuit types and verification simulators
- ``adders``      generators for the adder circuit families
- ``arch``        architecture models, lowering, and scheduling
- ``modexp``      closed-form modular-exponentiation cost models
- ``network``     multicomputer topologies and distributed latency models
- ``reliability`` teleportation/QEC reliability models
- ``tables``      table registry with provenance tracking
- ``service``     FastAPI application exposing the above
- ``cli``         command-line front end (thin client of the service)
"""

__version__ = "0.1.0"
