from typing_extensions import Protocol

from ncgroups.groups import Group


class GroupFactory(Protocol):
    def __call__(self, text: str) -> Group:
        ...
