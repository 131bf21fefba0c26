from .parity import CrossInversionTable, Label, partition_sign, perm_sign, sign_oracle

__all__ = [
    "CrossInversionTable",
    "Label",
    "partition_sign",
    "perm_sign",
    "sign_oracle",
]
