import setuptools

setuptools.setup(
    name="levy_extrema",
    version="0.1.0",
    description="Joint distribution of a Levy process and its running maximum by Wiener-Hopf factorization, "
                "with sinh-deformed contours and Laplace inversion",
    packages=setuptools.find_packages(exclude=["examples", "examples.*"]),
    package_data={"levy_extrema": ["data/*.csv"]},
    install_requires=["numpy",
                      "scipy",
                      "pandas",
                      "XlsxWriter"],
    entry_points={"console_scripts": ["levy-extrema = levy_extrema.cli.main:main"]},
    python_requires='>=3.8',
    classifiers=[
        "Programming Language :: Python :: 3.8+",
        "License :: OSI Approved :: MIT License",
        "Operating System :: Unix",
    ],
)
