use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::composition::{Composition, DEFAULT_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::steenrod::DegreeTable;

type ShuffleKey = (Composition, Composition);

/// Holds the degree cap and the memo tables for shuffle products, Adem
/// reduction and per-degree Steenrod tables.
///
/// A context is single-threaded (`!Sync`); give each worker its own.
pub struct Context {
    cap: u32,
    pub(crate) shuffle_memo: RefCell<HashMap<ShuffleKey, Rc<[Composition]>>>,
    pub(crate) adem_memo: RefCell<HashMap<Composition, Rc<[Composition]>>>,
    pub(crate) tables: RefCell<HashMap<u32, Rc<DegreeTable>>>,
}

impl Context {
    pub fn new(cap: u32) -> Self {
        Context {
            cap,
            shuffle_memo: Default::default(),
            adem_memo: Default::default(),
            tables: Default::default(),
        }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn check_degree(&self, degree: u32) -> Result<()> {
        if degree > self.cap {
            return Err(Error::DegreeCap {
                degree,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Drops every memoized result.
    pub fn clear_caches(&self) {
        self.shuffle_memo.borrow_mut().clear();
        self.adem_memo.borrow_mut().clear();
        self.tables.borrow_mut().clear();
    }
}

impl Default for Context {
    fn default() -> Self {
        Context::new(DEFAULT_DEGREE_CAP)
    }
}
