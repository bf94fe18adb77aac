"""
From sentences to semantic clusters
===================================

Each tokenized entry becomes a 512-dimensional unit vector. The built-in
embedder hashes character 3-grams, so paths that share word fragments land
near each other; a real sentence encoder can be swapped in through the
embedding-file format without touching anything downstream.

K-means then groups the vectors. The number of clusters comes from the elbow
rule: sweep k, look at the within-cluster sum of squares, and operate slightly
right of the bend.
"""
import numpy as np

from dirclust import (
    cosine,
    elbow_select,
    embed_all,
    kmeans,
    pca_project,
    tokenize_all,
    wordlist_from_paths,
)

wordpress = ["/wp-login.php", "/wp-config.php", "/wp-admin.php", "/wp-dash.php"]
joomla = [
    "/libraries/joomla/menu.jom",
    "/libraries/joomla/helper.jom",
    "/libraries/menu/helper.jom",
    "/libraries/joomla/core.jom",
]
images = ["/images/bricks.gif", "/images/tabs.gif", "/images/tree.gif", "/images/photo.gif"]

wl = wordlist_from_paths(wordpress + joomla + images)
emb = embed_all(tokenize_all(wl), dim=512, seed=0)

# cosine similarity respects the families
v = emb.vectors
print("cos(wp-login, wp-config)     =", round(cosine(v[0], v[1]), 3))
print("cos(wp-login, images/bricks) =", round(cosine(v[0], v[8]), 3))

# the elbow sweep: inertia collapses once k reaches the family count
curve = elbow_select(emb, 1, 8, seed=0)
print("\n k  inertia")
for k, inertia in curve.points:
    bar = "#" * int(40 * inertia / curve.points[0][1])
    print(f"{k:2d}  {inertia:8.3f} {bar}")
print("chosen k =", curve.chosen_k)

# clustering with k = number of families recovers them
model = kmeans(emb, 3, seed=0)
for name, group in [("wordpress", wordpress), ("joomla", joomla), ("images", images)]:
    ids = [e.id for e in wl if e.raw in group]
    print(f"{name:10s} -> clusters {[model.assignment[i] for i in ids]}")

# 2-D PCA view of the embedding space, one row per entry
proj = pca_project(emb)
coords = np.array([proj[i] for i in sorted(proj)])
print("\nPCA spread: x in [%.2f, %.2f], y in [%.2f, %.2f]"
      % (coords[:, 0].min(), coords[:, 0].max(), coords[:, 1].min(), coords[:, 1].max()))
