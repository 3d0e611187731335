"""Binary polarization shift keying through a dual-polarized RIS.

Link-level simulation and closed-form analysis of a line-of-sight link in
which an RIS encodes bits in the polarization of the reflected wave.
"""

__version__ = "0.1.0"
