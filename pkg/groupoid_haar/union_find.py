class UnionFind:
    """Union by rank with path compression over a finite set of labels

    :param labels: the elements of the set, any hashable values
    """

    def __init__(self, labels):
        self.parent = {x: x for x in labels}
        self.rank = {x: 0 for x in labels}
        self.size = {x: 1 for x in labels}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.size[x] += self.size[y]
        del self.rank[y]

    def reps(self):
        return set(self.rank)

    def __len__(self):
        return len(self.rank)

    def classes(self):
        """The partition as a sorted list of sorted tuples

        Classes are ordered by their smallest element so the result is
        deterministic.
        """
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return sorted(tuple(sorted(_)) for _ in groups.values())


def find_orbits(pairs, labels):
    """The classes of the equivalence relation generated by pairs

    :param pairs: an iterable of (x, y) that should be related
    :param labels: all elements of the underlying set
    :return: the sorted list of classes
    """
    uf = UnionFind(labels)
    for x, y in pairs:
        uf.union(x, y)
    return uf.classes()
